#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "irsbench/schemes.hpp"

using namespace irsbench;

namespace {

SystemConfig paper_miso(int pilot_len) {
  SystemConfig cfg;
  cfg.num_cells = 2;
  cfg.users_per_cell = 2;
  cfg.n_irs = 8;
  cfg.bts_antennas = 6;
  cfg.ue_antennas = 1;
  cfg.pilot_len = pilot_len;
  return cfg;
}

}  // namespace

TEST_CASE("scheme ids round-trip through their names") {
  for (SchemeId id : kAllSchemes) {
    CHECK(scheme_from_string(to_string(id)) == id);
  }
  CHECK_THROWS_AS(scheme_from_string("no_such_scheme"), ConfigError);
}

TEST_CASE("interference-free single user without a surface hits the matched-filter rate") {
  SystemConfig cfg;
  cfg.num_cells = 1;
  cfg.users_per_cell = 1;
  cfg.n_irs = 0;
  cfg.bts_antennas = 6;
  cfg.ue_antennas = 1;
  cfg.pilot_len = 8;
  cfg.noise_var = 2.0;
  cfg.tx_power = 1.5;
  const NetworkRealization real = draw_realization(cfg, 1);
  const TrialSeeds seeds = TrialSeeds::for_trial(1, 0);
  const SchemeResult r = run_scheme(SchemeId::perfect_csi, real, cfg, seeds);

  const cx_vec& h = real.direct[0][0];
  const double want = std::log2(
      1.0 + cfg.tx_power * std::real(arma::cdot(h, h)) / cfg.noise_var);
  CHECK(r.dl_sum_rate == doctest::Approx(want).epsilon(1e-9));
  CHECK(r.ul_sum_rate == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("training-symbol accounting") {
  SystemConfig cfg = paper_miso(16);
  const NetworkRealization real = draw_realization(cfg, 2);
  const TrialSeeds seeds = TrialSeeds::for_trial(2, 0);
  for (SchemeId id : kAllSchemes) {
    const SchemeResult r = run_scheme(id, real, cfg, seeds);
    CHECK(r.training_symbols_used ==
          static_cast<long long>(cfg.pilot_len) * (cfg.n_irs + 1));
  }

  SystemConfig mimo = paper_miso(16);
  mimo.ue_antennas = 2;
  mimo.n_fb = 2;
  mimo.n_irs = 4;
  const NetworkRealization real2 = draw_realization(mimo, 3);
  for (SchemeId id : kAllSchemes) {
    const SchemeResult r = run_scheme(id, real2, mimo, seeds);
    const long long one_shot =
        static_cast<long long>(mimo.pilot_len) * (mimo.n_irs + 1);
    const long long bidir = static_cast<long long>(mimo.pilot_len) *
                            (mimo.n_irs + 1 + 2 * mimo.n_fb);
    if (id == SchemeId::perfect_csi || id == SchemeId::full_chan_est ||
        id == SchemeId::partial_chan_est) {
      CHECK(r.training_symbols_used == one_shot);
    } else {
      CHECK(r.training_symbols_used == bidir);
    }
  }
}

TEST_CASE("alternation objective is nondecreasing (single-antenna users)") {
  SystemConfig cfg = paper_miso(16);
  cfg.n_irs = 4;
  cfg.n_alt = 4;
  for (int trial = 0; trial < 5; ++trial) {
    const NetworkRealization real = draw_realization(cfg, 10 + trial);
    const CsiBundle bundle = true_csi_bundle(real, cfg);
    const AlternateResult alt = max_sinr_alternate(bundle, cfg, cfg.n_alt, 7);
    for (const vec& trace : alt.traces) {
      for (arma::uword i = 1; i < trace.n_elem; ++i) {
        CHECK(trace(i) >= trace(i - 1) - 1e-9);
      }
    }
  }
}

TEST_CASE("three alternations are close to six") {
  SystemConfig cfg;
  cfg.num_cells = 2;
  cfg.users_per_cell = 2;
  cfg.n_irs = 16;
  cfg.bts_antennas = 6;
  cfg.ue_antennas = 2;
  cfg.pilot_len = 32;
  double acc3 = 0.0;
  double acc6 = 0.0;
  const int trials = 20;
  for (int trial = 0; trial < trials; ++trial) {
    const TrialSeeds seeds = TrialSeeds::for_trial(7, trial);
    const NetworkRealization real = draw_realization(cfg, seeds.channel);
    const CsiBundle bundle = estimated_csi_bundle(real, cfg, seeds, true);
    const AlternateResult a3 = max_sinr_alternate(bundle, cfg, 3, 9);
    const AlternateResult a6 = max_sinr_alternate(bundle, cfg, 6, 9);
    acc3 += arma::accu(eval_dl_rates(real, cfg, a3.irs_w, a3.bank));
    acc6 += arma::accu(eval_dl_rates(real, cfg, a6.irs_w, a6.bank));
  }
  CHECK(std::abs(acc6 - acc3) / std::abs(acc6) < 0.02);
}

TEST_CASE("single-user MIMO alternation approaches the dominant-mode rate") {
  SystemConfig cfg;
  cfg.num_cells = 1;
  cfg.users_per_cell = 1;
  cfg.n_irs = 4;
  cfg.bts_antennas = 4;
  cfg.ue_antennas = 2;
  cfg.pilot_len = 32;
  cfg.noise_var = 1.0;
  for (int trial = 0; trial < 3; ++trial) {
    const NetworkRealization real = draw_realization(cfg, 60 + trial);
    const CsiBundle bundle = true_csi_bundle(real, cfg);
    const AlternateResult alt = max_sinr_alternate(bundle, cfg, 6, 3);
    const double got = arma::accu(eval_ul_rates(real, cfg, alt.irs_w, alt.bank));

    // Oracle: optimal joint (v, g) for one user is the dominant singular
    // mode; ascend over the weights on that objective.
    PhaseObjective top_mode;
    top_mode.value = [&](const vec& ph) {
      const cx_mat h = compose_channel(real, 0, 0, unit_modulus(ph));
      const vec s = arma::svd(h);
      return std::log2(1.0 + cfg.tx_power * s(0) * s(0) / cfg.noise_var);
    };
    const AscendResult best = optimize_phases(top_mode, cfg.n_irs, cfg.opt, 3);
    CHECK(got > 0.99 * best.value);
    CHECK(got < best.value + 1e-6);
  }
}

TEST_CASE("bi-directional training accounting and degenerate round count") {
  SystemConfig cfg;
  cfg.num_cells = 2;
  cfg.users_per_cell = 2;
  cfg.n_irs = 4;
  cfg.bts_antennas = 4;
  cfg.ue_antennas = 2;
  cfg.pilot_len = 16;
  cfg.n_fb = 0;
  const NetworkRealization real = draw_realization(cfg, 70);
  const TrialSeeds seeds = TrialSeeds::for_trial(70, 0);
  const BidirResult r =
      bidirectional_train(SchemeId::direct_decentral, real, cfg, seeds);
  CHECK(r.result.training_symbols_used ==
        static_cast<long long>(cfg.pilot_len) * (cfg.n_irs + 1));
  // with no forward-backward rounds the combiners stay at their init
  for (const cx_vec& g : r.bank.g) {
    CHECK(arma::norm(g - cx_vec(cfg.ue_antennas, arma::fill::ones)) == 0.0);
  }
  CHECK_THROWS_AS(bidirectional_train(SchemeId::perfect_csi, real, cfg, seeds),
                  StructuralError);
}

TEST_CASE("bi-directional training approaches the single-user benchmark at high SNR") {
  SystemConfig cfg;
  cfg.num_cells = 1;
  cfg.users_per_cell = 1;
  cfg.n_irs = 4;
  cfg.bts_antennas = 4;
  cfg.ue_antennas = 2;
  cfg.pilot_len = 512;
  cfg.noise_var = 1e-6;
  cfg.n_fb = 2;
  const NetworkRealization real = draw_realization(cfg, 80);
  const TrialSeeds seeds = TrialSeeds::for_trial(80, 0);
  const BidirResult r =
      bidirectional_train(SchemeId::direct_central, real, cfg, seeds);

  const CsiBundle bundle = true_csi_bundle(real, cfg);
  const AlternateResult oracle = max_sinr_alternate(bundle, cfg, 4, 5);
  const double best = arma::accu(eval_dl_rates(real, cfg, oracle.irs_w, oracle.bank));
  CHECK(r.result.dl_sum_rate > 0.9 * best);
}

TEST_CASE("without interferers full and partial estimation coincide exactly") {
  SystemConfig cfg;
  cfg.num_cells = 1;
  cfg.users_per_cell = 2;
  cfg.n_irs = 4;
  cfg.bts_antennas = 4;
  cfg.pilot_len = 16;
  const NetworkRealization real = draw_realization(cfg, 90);
  const TrialSeeds seeds = TrialSeeds::for_trial(90, 0);
  const SchemeResult full = run_scheme(SchemeId::full_chan_est, real, cfg, seeds);
  const SchemeResult part =
      run_scheme(SchemeId::partial_chan_est, real, cfg, seeds);
  CHECK(full.dl_sum_rate == part.dl_sum_rate);
  CHECK(full.ul_sum_rate == part.ul_sum_rate);

  // and the same holds for the MIMO pipeline
  SystemConfig mimo = cfg;
  mimo.ue_antennas = 2;
  const NetworkRealization real2 = draw_realization(mimo, 91);
  const SchemeResult full2 = run_scheme(SchemeId::full_chan_est, real2, mimo, seeds);
  const SchemeResult part2 =
      run_scheme(SchemeId::partial_chan_est, real2, mimo, seeds);
  CHECK(full2.dl_sum_rate == part2.dl_sum_rate);
}

TEST_CASE("optimized weights beat random weights on average") {
  SystemConfig cfg = paper_miso(32);
  cfg.n_irs = 8;
  double opt = 0.0;
  double rnd = 0.0;
  const int trials = 20;
  for (int trial = 0; trial < trials; ++trial) {
    const TrialSeeds seeds = TrialSeeds::for_trial(5, trial);
    const NetworkRealization real = draw_realization(cfg, seeds.channel);
    opt += run_scheme(SchemeId::direct_decentral, real, cfg, seeds).dl_sum_rate;
    rnd += run_scheme(SchemeId::random_theta, real, cfg, seeds).dl_sum_rate;
  }
  CHECK(opt / trials > rnd / trials);
}

TEST_CASE("scheme runs are deterministic under the seed bundle") {
  SystemConfig cfg = paper_miso(16);
  const NetworkRealization real = draw_realization(cfg, 95);
  const TrialSeeds seeds = TrialSeeds::for_trial(95, 4);
  for (SchemeId id :
       {SchemeId::perfect_csi, SchemeId::direct_central, SchemeId::ls_obj}) {
    const SchemeResult a = run_scheme(id, real, cfg, seeds);
    const SchemeResult b = run_scheme(id, real, cfg, seeds);
    CHECK(a.dl_sum_rate == b.dl_sum_rate);
    CHECK(a.ul_sum_rate == b.ul_sum_rate);
  }
}

TEST_CASE("per-user rates are nonnegative and sum to the totals") {
  SystemConfig cfg = paper_miso(16);
  const NetworkRealization real = draw_realization(cfg, 97);
  const TrialSeeds seeds = TrialSeeds::for_trial(97, 0);
  const SchemeResult r = run_scheme(SchemeId::direct_central, real, cfg, seeds);
  CHECK(r.per_user_dl_rate.n_elem == static_cast<arma::uword>(cfg.total_users()));
  for (arma::uword m = 0; m < r.per_user_dl_rate.n_elem; ++m) {
    CHECK(r.per_user_dl_rate(m) >= 0.0);
  }
  CHECK(arma::accu(r.per_user_dl_rate) ==
        doctest::Approx(r.dl_sum_rate).epsilon(1e-12));
}
