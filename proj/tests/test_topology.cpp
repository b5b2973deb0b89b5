#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "irsbench/topology.hpp"

using namespace irsbench;

namespace {

SystemConfig small_config() {
  SystemConfig cfg;
  cfg.num_cells = 2;
  cfg.users_per_cell = 2;
  cfg.n_irs = 4;
  cfg.bts_antennas = 3;
  cfg.ue_antennas = 2;
  return cfg;
}

bool identical(const cx_mat& a, const cx_mat& b) {
  return a.n_rows == b.n_rows && a.n_cols == b.n_cols &&
         arma::approx_equal(a, b, "absdiff", 0.0);
}

}  // namespace

TEST_CASE("rician limit: huge factor collapses the BTS-side link to rank one") {
  SystemConfig cfg = small_config();
  cfg.rician_factor = 1e12;
  cfg.n_irs = 16;
  cfg.bts_antennas = 6;
  const NetworkRealization real = draw_realization(cfg, 42);
  const vec s = arma::svd(real.bts_to_irs[0]);
  CHECK(s(0) > 0.0);
  for (arma::uword i = 1; i < s.n_elem; ++i) {
    CHECK(s(i) / s(0) < 1e-5);
  }
}

TEST_CASE("BTS-side element power is one on average") {
  SystemConfig cfg;
  cfg.n_irs = 16;
  cfg.bts_antennas = 6;
  cfg.rician_factor = 10.0;
  double acc = 0.0;
  arma::uword count = 0;
  for (int d = 0; d < 10000; ++d) {
    const NetworkRealization real = draw_realization(cfg, 1000 + d);
    acc += arma::accu(arma::square(arma::abs(real.bts_to_irs[0])));
    count += real.bts_to_irs[0].n_elem;
  }
  const double mean_power = acc / count;
  CHECK(mean_power > 0.95);
  CHECK(mean_power < 1.05);
}

TEST_CASE("same seed draws a bitwise-identical realization") {
  const SystemConfig cfg = small_config();
  const NetworkRealization a = draw_realization(cfg, 7);
  const NetworkRealization b = draw_realization(cfg, 7);
  for (int c = 0; c < cfg.num_cells; ++c) {
    CHECK(identical(a.bts_to_irs[c], b.bts_to_irs[c]));
    for (int m = 0; m < cfg.total_users(); ++m) {
      CHECK(identical(a.direct[c][m], b.direct[c][m]));
      CHECK(identical(a.ue_to_irs[c][m], b.ue_to_irs[c][m]));
    }
  }
  const NetworkRealization other = draw_realization(cfg, 8);
  CHECK_FALSE(identical(a.direct[0][0], other.direct[0][0]));
}

TEST_CASE("zero weights reproduce the direct channel exactly") {
  const SystemConfig cfg = small_config();
  const NetworkRealization real = draw_realization(cfg, 3);
  const cx_vec w(cfg.n_irs, arma::fill::zeros);
  CHECK(identical(compose_channel(real, 1, 2, w), real.direct[1][2]));
}

TEST_CASE("scalar phase flip cancels the direct path") {
  NetworkRealization real;
  real.num_cells = 1;
  real.users = 1;
  real.n_irs = 1;
  real.bts_antennas = 1;
  real.ue_antennas = 1;
  real.direct = {{cx_mat(1, 1, arma::fill::ones)}};
  real.ue_to_irs = {{cx_mat(1, 1, arma::fill::ones)}};
  real.bts_to_irs = {cx_mat(1, 1, arma::fill::ones)};
  cx_vec w(1);
  w(0) = std::polar(1.0, std::numbers::pi);
  const cx_mat h = compose_channel(real, 0, 0, w);
  CHECK(std::abs(h(0, 0)) < 1e-12);
}

TEST_CASE("composition matches element-wise brute-force expansion") {
  SystemConfig cfg = small_config();
  cfg.bts_antennas = 3;
  cfg.ue_antennas = 2;
  cfg.n_irs = 4;
  const NetworkRealization real = draw_realization(cfg, 11);
  Rng rng(99);
  vec phases(cfg.n_irs, arma::fill::none);
  for (int j = 0; j < cfg.n_irs; ++j) phases(j) = 6.28 * rng.uniform();
  const cx_vec w = unit_modulus(phases);

  // Oracle: expand the diagonal product one element at a time.
  const cx_mat h_ir_t = real.bts_to_irs[0].st();
  cx_mat expect = real.direct[0][1];
  for (int j = 0; j < cfg.n_irs; ++j) {
    expect += w(j) * (h_ir_t.col(j) * real.ue_to_irs[0][1].row(j));
  }
  const cx_mat got = compose_channel(real, 0, 1, w);
  CHECK(arma::norm(got - expect, "fro") < 1e-12 * arma::norm(expect, "fro"));
}

TEST_CASE("reflected component is linear in the weights") {
  const SystemConfig cfg = small_config();
  const NetworkRealization real = draw_realization(cfg, 5);
  Rng rng(17);
  cx_vec w1(cfg.n_irs, arma::fill::none);
  cx_vec w2(cfg.n_irs, arma::fill::none);
  for (int j = 0; j < cfg.n_irs; ++j) {
    w1(j) = rng.gaussian_cx();
    w2(j) = rng.gaussian_cx();
  }
  const cx_mat base = compose_channel(real, 0, 0, cx_vec(cfg.n_irs, arma::fill::zeros));
  const cx_mat lhs = compose_channel(real, 0, 0, cx_vec(w1 + w2)) - base;
  const cx_mat rhs = (compose_channel(real, 0, 0, w1) - base) +
                     (compose_channel(real, 0, 0, w2) - base);
  CHECK(arma::norm(lhs - rhs, "fro") < 1e-12 * (1.0 + arma::norm(rhs, "fro")));
}

TEST_CASE("cascade matrix agrees with direct composition") {
  const SystemConfig cfg = small_config();
  const NetworkRealization real = draw_realization(cfg, 21);
  Rng rng(4);
  cx_vec g(cfg.ue_antennas, arma::fill::none);
  for (int a = 0; a < cfg.ue_antennas; ++a) g(a) = rng.gaussian_cx();
  vec phases(cfg.n_irs, arma::fill::none);
  for (int j = 0; j < cfg.n_irs; ++j) phases(j) = 6.28 * rng.uniform();
  const cx_vec w = unit_modulus(phases);

  const cx_vec via_cascade =
      real.direct[1][0] * g + cascade_matrix(real, 1, 0, g) * w;
  const cx_vec direct = compose_channel(real, 1, 0, w) * g;
  CHECK(arma::norm(via_cascade - direct) < 1e-12 * arma::norm(direct));
}

TEST_CASE("cross-cell links carry the configured power ratio") {
  SystemConfig cfg;
  cfg.num_cells = 2;
  cfg.users_per_cell = 2;
  cfg.n_irs = 8;
  cfg.bts_antennas = 4;
  double intra = 0.0;
  double cross = 0.0;
  arma::uword n_intra = 0;
  arma::uword n_cross = 0;
  for (int d = 0; d < 2000; ++d) {
    const NetworkRealization real = draw_realization(cfg, 50 + d);
    for (int c = 0; c < cfg.num_cells; ++c) {
      for (int m = 0; m < cfg.total_users(); ++m) {
        const double p = arma::accu(arma::square(arma::abs(real.direct[c][m]))) +
                         arma::accu(arma::square(arma::abs(real.ue_to_irs[c][m])));
        const arma::uword n =
            real.direct[c][m].n_elem + real.ue_to_irs[c][m].n_elem;
        if (cfg.is_intra(c, m)) {
          intra += p;
          n_intra += n;
        } else {
          cross += p;
          n_cross += n;
        }
      }
    }
  }
  const double ratio = (cross / n_cross) / (intra / n_intra);
  CHECK(ratio > 0.9 * cfg.cross_gain);
  CHECK(ratio < 1.1 * cfg.cross_gain);
}

TEST_CASE("structural errors on mismatched weights") {
  const SystemConfig cfg = small_config();
  const NetworkRealization real = draw_realization(cfg, 1);
  const cx_vec bad(cfg.n_irs + 1, arma::fill::ones);
  CHECK_THROWS_AS(compose_channel(real, 0, 0, bad), StructuralError);
}

TEST_CASE("no surface: composition works with empty weights") {
  SystemConfig cfg = small_config();
  cfg.n_irs = 0;
  const NetworkRealization real = draw_realization(cfg, 2);
  const cx_vec w;
  CHECK(identical(compose_channel(real, 0, 0, w), real.direct[0][0]));
}

TEST_CASE("unit-modulus state from phases") {
  Rng rng(8);
  vec phases(16, arma::fill::none);
  for (int j = 0; j < 16; ++j) phases(j) = 100.0 * (rng.uniform() - 0.5);
  const IrsState state = IrsState::from_phases(phases);
  for (arma::uword j = 0; j < state.w.n_elem; ++j) {
    CHECK(std::abs(std::abs(state.w(j)) - 1.0) < 1e-15);
  }
}
