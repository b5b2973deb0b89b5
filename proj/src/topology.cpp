#include "irsbench/topology.hpp"

#include <numbers>

namespace irsbench {

NetworkRealization draw_realization(const SystemConfig& cfg,
                                    std::uint64_t seed) {
  cfg.validate();
  const int cells = cfg.num_cells;
  const int users = cfg.total_users();
  const int n = cfg.n_irs;
  const int mr = cfg.bts_antennas;
  const int nt = cfg.ue_antennas;

  NetworkRealization real;
  real.num_cells = cells;
  real.users = users;
  real.n_irs = n;
  real.bts_antennas = mr;
  real.ue_antennas = nt;
  real.direct.assign(cells, std::vector<cx_mat>(users));
  real.ue_to_irs.assign(cells, std::vector<cx_mat>(users));
  real.bts_to_irs.assign(cells, cx_mat());

  Rng rng(seed);
  const double two_pi = 2.0 * std::numbers::pi;

  for (int c = 0; c < cells; ++c) {
    for (int m = 0; m < users; ++m) {
      const double gain = cfg.is_intra(c, m) ? 1.0 : cfg.cross_gain;
      const double amp = std::sqrt(gain);
      real.direct[c][m] = amp * randn_cx(mr, nt, rng);
      real.ue_to_irs[c][m] = amp * randn_cx(n, nt, rng);
    }
    // Rician BTS-side link: rank-one unit-modulus LoS plus iid scatter,
    // per-element second moment mu^2 + sigma^2 = 1.
    const double beta = cfg.rician_factor;
    const double los_amp = std::sqrt(beta / (1.0 + beta));
    const double nlos_amp = std::sqrt(1.0 / (1.0 + beta));
    cx_vec a(n, arma::fill::none);
    for (int i = 0; i < n; ++i) a(i) = std::polar(1.0, two_pi * rng.uniform());
    cx_vec b(mr, arma::fill::none);
    for (int i = 0; i < mr; ++i) b(i) = std::polar(1.0, two_pi * rng.uniform());
    real.bts_to_irs[c] = los_amp * (a * b.t()) + nlos_amp * randn_cx(n, mr, rng);
  }
  return real;
}

cx_mat compose_channel(const NetworkRealization& real, int cell, int user,
                       const cx_vec& w) {
  if (cell < 0 || cell >= real.num_cells || user < 0 || user >= real.users) {
    throw StructuralError("compose_channel: cell or user out of range");
  }
  const cx_mat& h_ir = real.bts_to_irs[cell];       // N x M_R
  const cx_mat& h_it = real.ue_to_irs[cell][user];  // N x N_T
  if (w.n_elem != h_ir.n_rows) {
    throw StructuralError("compose_channel: weight length does not match the surface size");
  }
  if (real.n_irs == 0) return real.direct[cell][user];
  return real.direct[cell][user] + h_ir.st() * (h_it.each_col() % w);
}

cx_mat cascade_matrix(const NetworkRealization& real, int cell, int user,
                      const cx_vec& precoder) {
  const cx_mat& h_ir = real.bts_to_irs[cell];
  const cx_mat& h_it = real.ue_to_irs[cell][user];
  if (precoder.n_elem != h_it.n_cols) {
    throw StructuralError("cascade_matrix: precoder length does not match UE antennas");
  }
  cx_mat c = h_ir.st();  // M_R x N
  const cx_vec scale = h_it * precoder;
  return c.each_row() % scale.st();
}

}  // namespace irsbench
