#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "irsbench/filters.hpp"
#include "irsbench/objectives.hpp"

using namespace irsbench;

namespace {

mat random_pilots(int t, int n, std::uint64_t seed) {
  return gen_pilots(t, n, PilotKind::random, seed).b;
}

cx_mat random_block(int m, int t, std::uint64_t seed) {
  Rng rng(seed);
  return randn_cx(m, t, rng);
}

/// Dense-matrix oracle for the projector onto the row space of Y, built the
/// slow literal way from the pseudo-inverse.
cx_mat dense_projector(const cx_mat& yw) {
  return yw.t() * arma::pinv(yw * yw.t()) * yw;
}

double cosine(const cx_vec& a, const cx_vec& b) {
  return std::abs(arma::cdot(a, b)) / (arma::norm(a) * arma::norm(b));
}

}  // namespace

TEST_CASE("identity system returns the pilot itself") {
  const cx_mat y = arma::eye<cx_mat>(4, 4);
  vec b(4, arma::fill::zeros);
  b(0) = 1.0;
  const cx_vec v = ls_filter(y, b);
  CHECK(arma::norm(v - arma::conv_to<cx_vec>::from(b)) < 1e-12);
}

TEST_CASE("normal equations: residual orthogonal to the rows of Y") {
  const cx_mat y = random_block(4, 16, 1);
  const vec b = vec(random_pilots(16, 1, 2));
  const cx_vec v = ls_filter(y, b);
  const arma::cx_rowvec residual = arma::conv_to<cx_vec>::from(b).t() - v.t() * y;
  const arma::cx_rowvec lhs = residual * y.t();
  CHECK(arma::norm(lhs) < 1e-10);
}

TEST_CASE("rank-one noiseless system: filter aligns with the channel") {
  Rng rng(3);
  const cx_vec h = randn_cx(4, 1, rng);
  const vec b = vec(random_pilots(16, 1, 4));
  const double sigma = 1.4;
  const cx_mat y = (sigma * h) * arma::conv_to<cx_vec>::from(b).t();
  const cx_vec v = ls_filter(y, b);
  CHECK(cosine(v, h) > 1.0 - 1e-10);
}

TEST_CASE("projection fixes vectors in the row space and kills the complement") {
  Rng rng(5);
  const cx_mat y = random_block(3, 8, 6);
  const cx_mat p = dense_projector(y);
  const vec bk = vec(random_pilots(8, 1, 7));
  // b_m constructed inside the row space: real part of a row combination
  const vec bm = arma::real(y.st() * randn_cx(3, 1, rng)) * 1.0;
  const cx lhs = proj_stat(y, bk, bm);
  const cx want = arma::cdot(arma::conv_to<cx_vec>::from(bk),
                             p * arma::conv_to<cx_vec>::from(bm));
  CHECK(std::abs(lhs - want) < 1e-9 * (1.0 + std::abs(want)));

  // vector orthogonal to the row space projects to zero
  cx_vec z = randn_cx(8, 1, rng);
  z -= p * z;  // remove the row-space part
  const cx_vec py_z = p * z;
  CHECK(arma::norm(py_z) < 1e-9 * arma::norm(z));
}

TEST_CASE("projection is idempotent") {
  const cx_mat y = random_block(3, 8, 8);
  const cx_mat p = dense_projector(y);
  CHECK(arma::norm(p * p - p, "fro") < 1e-12 * arma::norm(p, "fro"));
  // and the batch interface agrees with the dense oracle
  const mat b = random_pilots(8, 3, 9);
  const YwProjector proj(y);
  const cx_mat got = proj.proj_matrix(arma::conv_to<cx_mat>::from(b));
  const cx_mat want = arma::conv_to<cx_mat>::from(b).t() * p *
                      arma::conv_to<cx_mat>::from(b);
  CHECK(arma::norm(got - want, "fro") < 1e-9 * (1.0 + arma::norm(want, "fro")));
}

TEST_CASE("noise quadratic: scaled identity and the filter-norm identity") {
  const cx c(0.8, -1.1);
  cx_mat y = arma::eye<cx_mat>(4, 4);
  y *= c;
  const vec b = vec(random_pilots(4, 1, 10));
  CHECK(noise_quadratic(y, b) ==
        doctest::Approx(arma::dot(b, b) / std::norm(c)).epsilon(1e-12));

  const cx_mat y2 = random_block(4, 16, 11);
  const vec b2 = vec(random_pilots(16, 1, 12));
  CHECK(noise_quadratic(y2, b2) ==
        doctest::Approx(std::pow(arma::norm(ls_filter(y2, b2)), 2))
            .epsilon(1e-10));

  // homogeneity: scaling Y by alpha scales the quadratic by 1/|alpha|^2
  const double alpha = 2.5;
  CHECK(noise_quadratic(cx_mat(alpha * y2), b2) ==
        doctest::Approx(noise_quadratic(y2, b2) / (alpha * alpha))
            .epsilon(1e-10));
}

TEST_CASE("rank-deficient blocks take the pseudo-inverse path and stay finite") {
  const cx_mat y = random_block(6, 3, 13);  // T < M_R
  const vec b = vec(random_pilots(3, 1, 14));
  LsInfo info;
  const cx_vec v = ls_filter(y, b, &info);
  CHECK(info.rank_deficient);
  CHECK(info.rank == 3);
  CHECK(v.is_finite());
  // minimum-norm solution agrees with the dense pseudo-inverse oracle
  const cx_vec want = arma::pinv(y.t()) * arma::conv_to<cx_vec>::from(b);
  CHECK(arma::norm(v - want) < 1e-9 * (1.0 + arma::norm(want)));
}

TEST_CASE("MMSE filter reduces to the matched filter in heavy noise") {
  Rng rng(15);
  const cx_vec h = randn_cx(6, 1, rng);
  const std::vector<cx_vec> composites = {h};
  const vec powers(1, arma::fill::ones);
  const cx_vec v = mmse_filter(composites, powers, 1e9, 0);
  CHECK(cosine(v, h) > 1.0 - 1e-6);
}

TEST_CASE("two orthogonal users: closed-form SINR") {
  cx_vec h1(4, arma::fill::zeros);
  cx_vec h2(4, arma::fill::zeros);
  h1(0) = cx(1.2, 0.4);
  h1(1) = cx(-0.3, 0.9);
  h2(2) = cx(0.5, -1.0);
  h2(3) = cx(2.0, 0.1);
  const std::vector<cx_vec> composites = {h1, h2};
  vec powers(2);
  powers(0) = 1.5;
  powers(1) = 0.7;
  const double noise_var = 2.3;
  const cx_vec v = mmse_filter(composites, powers, noise_var, 0);
  const double sinr = true_sinr(composites, v, 0, powers, noise_var);
  const double want = powers(0) * std::real(arma::cdot(h1, h1)) / noise_var;
  CHECK(sinr == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("LS filter converges to the MMSE filter in direction") {
  SystemConfig cfg;
  cfg.num_cells = 2;
  cfg.users_per_cell = 2;
  cfg.n_irs = 4;
  cfg.bts_antennas = 6;
  const int t = 8192;
  double acc = 0.0;
  const int trials = 5;
  for (int trial = 0; trial < trials; ++trial) {
    const NetworkRealization real = draw_realization(cfg, 500 + trial);
    const PilotSet pilots =
        gen_pilots(t, cfg.total_users(), PilotKind::random, 600 + trial);
    std::vector<UlStream> streams;
    std::vector<cx_vec> composites;
    const cx_vec w(cfg.n_irs, arma::fill::ones);
    for (int m = 0; m < cfg.total_users(); ++m) {
      streams.push_back(UlStream{m, cx_vec(1, arma::fill::ones),
                                 std::sqrt(cfg.tx_power)});
      composites.push_back(compose_channel(real, 0, m, w));
    }
    const cx_mat y = simulate_ul_epoch(real, w, pilots.b, streams, 0,
                                       cfg.noise_var, 700 + trial);
    const cx_vec v_ls = ls_filter(y, pilots.b.col(0));
    const cx_vec v_mmse =
        mmse_filter(composites, cfg.user_powers(), cfg.noise_var, 0);
    acc += cosine(v_ls, v_mmse);
  }
  CHECK(acc / trials > 0.99);
}

TEST_CASE("projection statistic of a pilot with itself behaves like a correlation") {
  const cx_mat y = random_block(4, 32, 16);
  const vec b = vec(random_pilots(32, 1, 17));
  const cx p = proj_stat(y, b, b);
  CHECK(std::abs(std::imag(p)) < 1e-10);
  CHECK(std::real(p) >= 0.0);
  CHECK(std::real(p) <= arma::dot(b, b) + 1e-10);
  // b^H P b = v^H Y b for the LS filter
  const cx_vec v = ls_filter(y, b);
  const cx corr = arma::cdot(v, y * arma::conv_to<cx_vec>::from(b));
  CHECK(std::abs(p - corr) < 1e-10 * (1.0 + std::abs(corr)));
}

TEST_CASE("correlation estimate tightens with the training length") {
  SystemConfig cfg;
  cfg.num_cells = 2;
  cfg.users_per_cell = 2;
  cfg.n_irs = 4;
  cfg.bts_antennas = 6;
  Rng dir_rng(18);
  cx_vec v = randn_cx(cfg.bts_antennas, 1, dir_rng);
  v /= arma::norm(v);
  const double sigma = std::sqrt(cfg.tx_power);

  auto median_error = [&](int t, int trials) {
    vec errs(trials);
    for (int trial = 0; trial < trials; ++trial) {
      const NetworkRealization real = draw_realization(cfg, 800 + trial);
      const cx_vec w =
          unit_modulus(vec(cfg.n_irs, arma::fill::value(0.3 * trial)));
      const PilotSet pilots =
          gen_pilots(t, cfg.total_users(), PilotKind::random, 900 + trial);
      std::vector<UlStream> streams;
      for (int m = 0; m < cfg.total_users(); ++m) {
        streams.push_back(UlStream{m, cx_vec(1, arma::fill::ones), sigma});
      }
      const cx_mat y = simulate_ul_epoch(real, w, pilots.b, streams, 0,
                                         cfg.noise_var, 1000 + trial);
      const cx est = arma::cdot(v, y * arma::conv_to<cx_vec>::from(
                                        sigma * pilots.b.col(0))) /
                     static_cast<double>(t);
      const cx want = arma::cdot(v, compose_channel(real, 0, 0, w)) * cfg.tx_power;
      errs(trial) = std::abs(est - want);
    }
    return arma::median(errs);
  };

  CHECK(median_error(4096, 25) < median_error(64, 25));
}

TEST_CASE("noiseless estimation with orthogonal pilots recovers the channels exactly") {
  SystemConfig cfg;
  cfg.num_cells = 2;
  cfg.users_per_cell = 2;
  cfg.n_irs = 4;
  cfg.bts_antennas = 4;
  cfg.pilot_len = 16;
  const NetworkRealization real = draw_realization(cfg, 19);
  const Codebook cb = build_codebook(cfg.n_irs, CodebookKind::dft);
  const PilotSet pilots =
      gen_pilots(cfg.pilot_len, cfg.total_users(), PilotKind::walsh, 0);
  const double sigma = std::sqrt(cfg.tx_power);
  std::vector<UlStream> streams;
  std::vector<StreamDesc> descs;
  for (int m = 0; m < cfg.total_users(); ++m) {
    streams.push_back(UlStream{m, cx_vec(1, arma::fill::ones), sigma});
    descs.push_back(StreamDesc{m, 0, sigma});
  }
  const TrainingRecord rec =
      simulate_ul_training(real, cb, pilots.b, streams, 0, 0.0, 0);

  for (bool joint : {false, true}) {
    const CsiEstimate est = estimate_csi(rec, cb, pilots.b, descs, 1, joint);
    for (int m = 0; m < cfg.total_users(); ++m) {
      const int idx = est.index_of(m);
      REQUIRE(idx >= 0);
      CHECK(arma::norm(est.direct_hat[idx] - real.direct[0][m], "fro") <
            1e-9 * arma::norm(real.direct[0][m], "fro"));
      const cx_mat cas = cascade_matrix(real, 0, m, cx_vec(1, arma::fill::ones));
      for (int j = 0; j < cfg.n_irs; ++j) {
        CHECK(arma::norm(est.cascade[idx][j] - cas.col(j), "fro") <
              1e-9 * (1.0 + arma::norm(cas.col(j), "fro")));
      }
    }
  }
}

TEST_CASE("estimator is unbiased over the noise ensemble") {
  SystemConfig cfg;
  cfg.num_cells = 1;
  cfg.users_per_cell = 2;
  cfg.n_irs = 2;
  cfg.bts_antennas = 3;
  cfg.pilot_len = 8;
  cfg.noise_var = 1.0;
  const NetworkRealization real = draw_realization(cfg, 20);
  const Codebook cb = build_codebook(cfg.n_irs, CodebookKind::dft);
  const PilotSet pilots =
      gen_pilots(cfg.pilot_len, cfg.total_users(), PilotKind::walsh, 0);
  const double sigma = std::sqrt(cfg.tx_power);
  std::vector<UlStream> streams;
  std::vector<StreamDesc> descs;
  for (int m = 0; m < cfg.total_users(); ++m) {
    streams.push_back(UlStream{m, cx_vec(1, arma::fill::ones), sigma});
    descs.push_back(StreamDesc{m, 0, sigma});
  }

  const int draws = 1000;
  cx_mat acc(cfg.bts_antennas, 1, arma::fill::zeros);
  vec acc_sq(cfg.bts_antennas, arma::fill::zeros);
  for (int d = 0; d < draws; ++d) {
    const TrainingRecord rec = simulate_ul_training(
        real, cb, pilots.b, streams, 0, cfg.noise_var, 3000 + d);
    const CsiEstimate est = estimate_csi(rec, cb, pilots.b, descs, 1, false);
    const cx_mat err = est.direct_hat[0] - real.direct[0][0];
    acc += err;
    acc_sq += arma::square(arma::abs(err.col(0)));
  }
  for (int i = 0; i < cfg.bts_antennas; ++i) {
    const double mean_err = std::abs(acc(i, 0)) / draws;
    const double stderr_i = std::sqrt(acc_sq(i) / draws / draws);
    CHECK(mean_err < 3.0 * stderr_i);
  }
}

TEST_CASE("partial scope holds no entry for out-of-scope users") {
  SystemConfig cfg;
  cfg.num_cells = 2;
  cfg.users_per_cell = 1;
  cfg.n_irs = 2;
  cfg.bts_antennas = 3;
  cfg.pilot_len = 8;
  const NetworkRealization real = draw_realization(cfg, 21);
  const Codebook cb = build_codebook(cfg.n_irs, CodebookKind::dft);
  const PilotSet pilots =
      gen_pilots(cfg.pilot_len, cfg.total_users(), PilotKind::random, 22);
  const double sigma = std::sqrt(cfg.tx_power);
  std::vector<UlStream> streams;
  for (int m = 0; m < cfg.total_users(); ++m) {
    streams.push_back(UlStream{m, cx_vec(1, arma::fill::ones), sigma});
  }
  const TrainingRecord rec =
      simulate_ul_training(real, cb, pilots.b, streams, 0, cfg.noise_var, 23);
  // scope restricted to the intra-cell user 0
  const CsiEstimate est = estimate_csi(rec, cb, pilots.b.col(0),
                                       {StreamDesc{0, 0, sigma}}, 1, false);
  CHECK(est.users.size() == 1);
  CHECK(est.index_of(1) == -1);
}
