#include "irsbench/airlink.hpp"

namespace irsbench {

namespace {

mat walsh_columns(int pilot_len, int n_streams) {
  if ((pilot_len & (pilot_len - 1)) != 0) {
    throw ConfigError("walsh pilots need pilot_len to be a power of two");
  }
  if (n_streams > pilot_len) {
    throw ConfigError("walsh pilots support at most pilot_len streams");
  }
  mat h(1, 1, arma::fill::ones);
  while (static_cast<int>(h.n_rows) < pilot_len) {
    h = arma::join_vert(arma::join_horiz(h, h), arma::join_horiz(h, -h));
  }
  return h.head_cols(n_streams);
}

}  // namespace

PilotSet gen_pilots(int pilot_len, int n_streams, PilotKind kind,
                    std::uint64_t seed) {
  if (pilot_len < 1 || n_streams < 0) {
    throw ConfigError("gen_pilots: pilot_len must be >= 1 and n_streams >= 0");
  }
  PilotSet set;
  set.kind = kind;
  if (kind == PilotKind::walsh) {
    set.b = walsh_columns(pilot_len, n_streams);
    return set;
  }
  Rng rng(seed);
  set.b.set_size(pilot_len, n_streams);
  for (arma::uword i = 0; i < set.b.n_elem; ++i) {
    set.b(i) = rng.uniform() < 0.5 ? -1.0 : 1.0;
  }
  return set;
}

cx_mat simulate_ul_epoch(const NetworkRealization& real, const cx_vec& theta,
                         const mat& pilots,
                         const std::vector<UlStream>& streams, int cell,
                         double noise_var, std::uint64_t seed) {
  if (static_cast<int>(pilots.n_cols) != static_cast<int>(streams.size())) {
    throw StructuralError("simulate_ul_epoch: one pilot column per stream required");
  }
  const arma::uword mr = real.bts_antennas;
  const arma::uword t = pilots.n_rows;
  cx_mat y(mr, t, arma::fill::zeros);
  for (std::size_t s = 0; s < streams.size(); ++s) {
    const UlStream& st = streams[s];
    const cx_vec h = compose_channel(real, cell, st.user, theta) * st.precoder;
    y += (st.amplitude * h) * arma::conv_to<cx_vec>::from(pilots.col(s)).t();
  }
  if (noise_var > 0.0) {
    Rng rng(seed);
    y += std::sqrt(noise_var) * randn_cx(mr, t, rng);
  }
  return y;
}

TrainingRecord simulate_ul_training(const NetworkRealization& real,
                                    const Codebook& cb, const mat& pilots,
                                    const std::vector<UlStream>& streams,
                                    int cell, double noise_var,
                                    std::uint64_t seed) {
  TrainingRecord rec;
  rec.noise_var = noise_var;
  rec.epochs.reserve(cb.epochs());
  for (int j = 0; j < cb.epochs(); ++j) {
    rec.epochs.push_back(simulate_ul_epoch(real, cb.thetas[j], pilots, streams,
                                           cell, noise_var,
                                           derive_seed(seed, 0xE7, j)));
  }
  return rec;
}

cx_mat simulate_dl_training(const NetworkRealization& real, const mat& pilots,
                            const std::vector<DlStream>& streams,
                            const std::vector<cx_vec>& irs_w, int user,
                            double noise_var, std::uint64_t seed) {
  if (static_cast<int>(pilots.n_cols) != static_cast<int>(streams.size())) {
    throw StructuralError("simulate_dl_training: one pilot column per stream required");
  }
  if (static_cast<int>(irs_w.size()) != real.num_cells) {
    throw StructuralError("simulate_dl_training: one weight vector per cell required");
  }
  const arma::uword nt = real.ue_antennas;
  const arma::uword t = pilots.n_rows;
  cx_mat y(nt, t, arma::fill::zeros);
  for (std::size_t s = 0; s < streams.size(); ++s) {
    const DlStream& st = streams[s];
    const cx_mat h_ul = compose_channel(real, st.cell, user, irs_w[st.cell]);
    const cx_vec h_dl = h_ul.st() * st.precoder;  // reciprocity
    y += (st.amplitude * h_dl) * arma::conv_to<cx_vec>::from(pilots.col(s)).t();
  }
  if (noise_var > 0.0) {
    Rng rng(seed);
    y += std::sqrt(noise_var) * randn_cx(nt, t, rng);
  }
  return y;
}

}  // namespace irsbench
