#include "irsbench/schemes.hpp"

#include <numbers>

#include "irsbench/airlink.hpp"

namespace irsbench {

std::string to_string(SchemeId id) {
  switch (id) {
    case SchemeId::perfect_csi:
      return "perfect_csi";
    case SchemeId::full_chan_est:
      return "full_chan_est";
    case SchemeId::partial_chan_est:
      return "partial_chan_est";
    case SchemeId::direct_central:
      return "direct_central";
    case SchemeId::direct_decentral:
      return "direct_decentral";
    case SchemeId::ls_obj:
      return "ls_obj";
    case SchemeId::random_theta:
      return "random_theta";
  }
  return "?";
}

SchemeId scheme_from_string(const std::string& name) {
  for (SchemeId id : kAllSchemes) {
    if (to_string(id) == name) return id;
  }
  throw ConfigError("unknown scheme '" + name + "'");
}

std::string csv_column(SchemeId id) {
  switch (id) {
    case SchemeId::perfect_csi:
      return "Perfect_CSI";
    case SchemeId::full_chan_est:
      return "Channel_Est";
    case SchemeId::partial_chan_est:
      return "Channel_Est-NoIntf";
    case SchemeId::direct_central:
      return "PreciseObj";
    case SchemeId::direct_decentral:
      return "NoIntf";
    case SchemeId::ls_obj:
      return "LogLSObj";
    case SchemeId::random_theta:
      return "RandomTheta";
  }
  return "?";
}

TrialSeeds TrialSeeds::for_trial(std::uint64_t master, std::uint64_t trial) {
  TrialSeeds s;
  s.channel = derive_seed(master, 0xC4A5, trial);
  s.pilot = derive_seed(master, 0x9107, trial);
  s.noise = derive_seed(master, 0x4015, trial);
  s.aux = derive_seed(master, 0xA0D0, trial);
  return s;
}

cx_vec ul_precoder(const cx_vec& g) {
  const double n = arma::norm(g);
  if (!(n > 0.0)) return cx_vec(g.n_elem, arma::fill::zeros);
  return arma::conj(g) / n;
}

cx_vec dl_precoder(const cx_vec& v) {
  const double n = arma::norm(v);
  if (!(n > 0.0)) return cx_vec(v.n_elem, arma::fill::zeros);
  return arma::conj(v) / n;
}

vec eval_dl_rates(const NetworkRealization& real, const SystemConfig& cfg,
                  const std::vector<cx_vec>& irs_w, const FilterBank& bank) {
  const int cells = cfg.num_cells;
  const int k_users = cfg.users_per_cell;
  const int users = cfg.total_users();
  const vec powers = cfg.user_powers();

  std::vector<std::vector<cx_vec>> f(cells, std::vector<cx_vec>(k_users));
  for (int c = 0; c < cells; ++c) {
    for (int k = 0; k < k_users; ++k) f[c][k] = dl_precoder(bank.v[c][k]);
  }

  vec rates(users, arma::fill::zeros);
  for (int m = 0; m < users; ++m) {
    const cx_vec& a = bank.g[m];
    if (!(arma::norm(a) > 0.0)) continue;
    const int cm = cfg.cell_of(m);
    const int km = m - cm * k_users;
    double num = 0.0;
    double den = cfg.noise_var * std::real(arma::cdot(a, a));
    for (int c = 0; c < cells; ++c) {
      const cx_mat h_dl = compose_channel(real, c, m, irs_w[c]).st();
      for (int k = 0; k < k_users; ++k) {
        const double gain =
            powers(c * k_users + k) * std::norm(arma::cdot(a, h_dl * f[c][k]));
        if (c == cm && k == km) {
          num = gain;
        } else {
          den += gain;
        }
      }
    }
    rates(m) = std::log2(1.0 + num / den);
  }
  return rates;
}

vec eval_ul_rates(const NetworkRealization& real, const SystemConfig& cfg,
                  const std::vector<cx_vec>& irs_w, const FilterBank& bank) {
  const int cells = cfg.num_cells;
  const int k_users = cfg.users_per_cell;
  const int users = cfg.total_users();
  const vec powers = cfg.user_powers();

  vec rates(users, arma::fill::zeros);
  for (int c = 0; c < cells; ++c) {
    std::vector<cx_vec> composites(users);
    for (int m = 0; m < users; ++m) {
      composites[m] = compose_channel(real, c, m, irs_w[c]) * ul_precoder(bank.g[m]);
    }
    for (int k = 0; k < k_users; ++k) {
      const int u = c * k_users + k;
      const double sinr =
          true_sinr(composites, bank.v[c][k], u, powers, cfg.noise_var);
      rates(u) = std::log2(1.0 + sinr);
    }
  }
  return rates;
}

CsiBundle true_csi_bundle(const NetworkRealization& real,
                          const SystemConfig& cfg) {
  CsiBundle bundle;
  bundle.cross_cell = true;
  bundle.cells.resize(cfg.num_cells);
  for (int c = 0; c < cfg.num_cells; ++c) {
    CsiEstimate& cs = bundle.cells[c];
    for (int m = 0; m < cfg.total_users(); ++m) {
      cs.users.push_back(m);
      cs.direct_hat.push_back(real.direct[c][m]);
      std::vector<cx_mat> cas(cfg.n_irs);
      const cx_mat h_ir_t = real.bts_to_irs[c].st();
      const cx_mat& h_it = real.ue_to_irs[c][m];
      for (int j = 0; j < cfg.n_irs; ++j) {
        cas[j] = h_ir_t.col(j) * h_it.row(j);
      }
      cs.cascade.push_back(std::move(cas));
    }
  }
  return bundle;
}

namespace {

constexpr std::uint64_t kTagSweepNoise = 0xA1;
constexpr std::uint64_t kTagOpt = 0x0907;
constexpr std::uint64_t kTagRandomTheta = 0x7AE7;
constexpr std::uint64_t kTagForwardPilot = 0xF07D;
constexpr std::uint64_t kTagForwardNoise = 0xD1;
constexpr std::uint64_t kTagBackwardNoise = 0xD2;

bool is_csi_scheme(SchemeId id) {
  return id == SchemeId::perfect_csi || id == SchemeId::full_chan_est ||
         id == SchemeId::partial_chan_est;
}

vec random_phases(int n, std::uint64_t seed) {
  Rng rng(seed);
  vec phases(n, arma::fill::none);
  for (int j = 0; j < n; ++j) {
    phases(j) = 2.0 * std::numbers::pi * rng.uniform();
  }
  return phases;
}

/// Streams for the synchronized uplink sweep of the sample-based schemes and
/// of MISO channel estimation: one stream per user through its current
/// uplink precoder.
std::vector<UlStream> per_user_streams(const SystemConfig& cfg,
                                       const FilterBank& bank) {
  std::vector<UlStream> streams(cfg.total_users());
  const double amp = std::sqrt(cfg.tx_power);
  for (int m = 0; m < cfg.total_users(); ++m) {
    streams[m] = UlStream{m, ul_precoder(bank.g[m]), amp};
  }
  return streams;
}

/// Effective objective context of one BTS given its channel knowledge and
/// the current uplink precoders.
CsiContext effective_csi_context(const CsiEstimate& cs, const SystemConfig& cfg,
                                 const std::vector<cx_vec>& precoders,
                                 int cell) {
  CsiContext ctx;
  ctx.mode = ObjectiveMode::estimated_csi;
  ctx.noise_var = cfg.noise_var;
  const int n_scope = static_cast<int>(cs.users.size());
  ctx.direct_eff.resize(n_scope);
  ctx.cascade_eff.resize(n_scope);
  ctx.powers.set_size(n_scope);
  std::vector<arma::uword> own;
  for (int i = 0; i < n_scope; ++i) {
    const int user = cs.users[i];
    const cx_vec& g = precoders[user];
    ctx.direct_eff[i] = cs.direct_hat[i] * g;
    cx_mat cas(cs.direct_hat[i].n_rows, cfg.n_irs, arma::fill::zeros);
    for (int j = 0; j < cfg.n_irs; ++j) cas.col(j) = cs.cascade[i][j] * g;
    ctx.cascade_eff[i] = std::move(cas);
    ctx.powers(i) = cfg.tx_power;
    if (cfg.is_intra(cell, user)) own.push_back(i);
  }
  ctx.own = uvec(own);
  return ctx;
}

SchemeResult finish_result(SchemeId id, const NetworkRealization& real,
                           const SystemConfig& cfg,
                           const std::vector<cx_vec>& irs_w,
                           const FilterBank& bank, long long training,
                           int iterations, std::vector<std::string> flags) {
  SchemeResult r;
  r.scheme = id;
  r.per_user_dl_rate = eval_dl_rates(real, cfg, irs_w, bank);
  r.dl_sum_rate = arma::accu(r.per_user_dl_rate);
  r.ul_sum_rate = arma::accu(eval_ul_rates(real, cfg, irs_w, bank));
  r.training_symbols_used = training;
  r.iterations = iterations;
  r.flags = std::move(flags);
  return r;
}

}  // namespace

CsiBundle estimated_csi_bundle(const NetworkRealization& real,
                               const SystemConfig& cfg,
                               const TrialSeeds& seeds, bool full_scope) {
  const Codebook cb = build_codebook(cfg.n_irs, cfg.codebook);
  const int users = cfg.total_users();
  const int nt = cfg.ue_antennas;

  // MISO estimation shares the per-user sweep of the sample-based schemes.
  // MIMO estimation excites each UE antenna with its own pilot stream at
  // power tx_power / N_T so that the full M_R x N_T channels are observable.
  std::vector<UlStream> streams;
  std::vector<StreamDesc> descs;
  if (nt == 1) {
    FilterBank init;
    init.g.assign(users, cx_vec(1, arma::fill::ones));
    streams = per_user_streams(cfg, init);
    for (int m = 0; m < users; ++m) {
      descs.push_back(StreamDesc{m, 0, std::sqrt(cfg.tx_power)});
    }
  } else {
    const double amp = std::sqrt(cfg.tx_power / nt);
    for (int m = 0; m < users; ++m) {
      for (int a = 0; a < nt; ++a) {
        cx_vec e(nt, arma::fill::zeros);
        e(a) = 1.0;
        streams.push_back(UlStream{m, e, amp});
        descs.push_back(StreamDesc{m, a, amp});
      }
    }
  }
  const PilotSet pilots = gen_pilots(cfg.pilot_len,
                                     static_cast<int>(streams.size()),
                                     cfg.pilot_kind, seeds.pilot);

  CsiBundle bundle;
  bundle.cross_cell = full_scope;
  for (int c = 0; c < cfg.num_cells; ++c) {
    const TrainingRecord record = simulate_ul_training(
        real, cb, pilots.b, streams, c, cfg.noise_var,
        derive_seed(seeds.noise, kTagSweepNoise, c));
    uvec scope;
    if (full_scope) {
      scope = arma::regspace<uvec>(0, pilots.b.n_cols - 1);
    } else {
      std::vector<arma::uword> idx;
      for (std::size_t s = 0; s < descs.size(); ++s) {
        if (cfg.is_intra(c, descs[s].user)) idx.push_back(s);
      }
      scope = uvec(idx);
    }
    std::vector<StreamDesc> descs_scope;
    for (arma::uword i = 0; i < scope.n_elem; ++i) {
      descs_scope.push_back(descs[scope(i)]);
    }
    bundle.cells.push_back(estimate_csi(record, cb, pilots.b.cols(scope),
                                        descs_scope, nt, cfg.csi_joint_ls));
  }
  return bundle;
}

AlternateResult max_sinr_alternate(const CsiBundle& bundle,
                                   const SystemConfig& cfg, int n_alt,
                                   std::uint64_t opt_seed) {
  const int cells = cfg.num_cells;
  const int k_users = cfg.users_per_cell;
  const int users = cfg.total_users();
  const vec powers = cfg.user_powers();
  if (static_cast<int>(bundle.cells.size()) != cells) {
    throw StructuralError("max_sinr_alternate: one knowledge block per cell required");
  }

  AlternateResult out;
  out.bank.g.assign(users, cx_vec(cfg.ue_antennas, arma::fill::ones));
  out.bank.v.assign(cells, std::vector<cx_vec>(k_users));
  std::vector<vec> phases(cells, vec(cfg.n_irs, arma::fill::zeros));
  out.irs_w.resize(cells);
  for (int c = 0; c < cells; ++c) out.irs_w[c] = unit_modulus(phases[c]);

  std::vector<cx_vec> precoders(users);
  auto refresh_precoders = [&] {
    for (int m = 0; m < users; ++m) precoders[m] = ul_precoder(out.bank.g[m]);
  };

  auto update_v = [&] {
    refresh_precoders();
    for (int c = 0; c < cells; ++c) {
      const CsiEstimate& cs = bundle.cells[c];
      std::vector<cx_vec> composites(cs.users.size());
      vec scope_powers(cs.users.size());
      for (std::size_t i = 0; i < cs.users.size(); ++i) {
        composites[i] = cs.composite(static_cast<int>(i), out.irs_w[c]) *
                        precoders[cs.users[i]];
        scope_powers(i) = powers(cs.users[i]);
      }
      for (int k = 0; k < k_users; ++k) {
        const int idx = cs.index_of(c * k_users + k);
        if (idx < 0) {
          throw StructuralError("max_sinr_alternate: serving user missing from scope");
        }
        out.bank.v[c][k] =
            mmse_filter(composites, scope_powers, cfg.noise_var, idx);
      }
    }
  };

  // MMSE downlink combiner per UE from whatever knowledge is available:
  // every cell's streams when estimates are exchanged, otherwise only the
  // serving cell's.
  auto update_g = [&] {
    std::vector<cx_vec> next(users);
    for (int m = 0; m < users; ++m) {
      const int cm = cfg.cell_of(m);
      const int km = m - cm * k_users;
      cx_mat cov(cfg.ue_antennas, cfg.ue_antennas, arma::fill::eye);
      cov *= cfg.noise_var;
      cx_vec t_serving;
      for (int c = 0; c < cells; ++c) {
        if (!bundle.cross_cell && c != cm) continue;
        const int idx = bundle.cells[c].index_of(m);
        if (idx < 0) continue;
        const cx_mat h_dl = bundle.cells[c].composite(idx, out.irs_w[c]).st();
        for (int k = 0; k < k_users; ++k) {
          const cx_vec t = h_dl * dl_precoder(out.bank.v[c][k]);
          cov += powers(c * k_users + k) * (t * t.t());
          if (c == cm && k == km) t_serving = t;
        }
      }
      next[m] = arma::solve(cov, t_serving, arma::solve_opts::likely_sympd);
    }
    out.bank.g = std::move(next);
  };

  std::vector<std::vector<double>> traces(cells);
  for (int iter = 0; iter < n_alt; ++iter) {
    refresh_precoders();
    for (int c = 0; c < cells; ++c) {
      const CsiContext ctx =
          effective_csi_context(bundle.cells[c], cfg, precoders, c);
      const PhaseObjective obj = csi_phase_objective(ctx);
      AscendResult run;
      if (iter == 0) {
        run = optimize_phases(obj, cfg.n_irs, cfg.opt,
                              derive_seed(opt_seed, kTagOpt, c));
      } else {
        run = ascend_to_convergence(obj, phases[c], cfg.opt);
      }
      phases[c] = run.phases;
      out.irs_w[c] = unit_modulus(phases[c]);
      out.iterations += run.iters;
      if (run.stalled) out.flags.push_back("stalled");
      traces[c].push_back(run.value);
    }
    // The filter pair is cheap to refresh offline, so run it to a short
    // fixed point after every weight update.
    update_v();
    if (cfg.ue_antennas > 1) {
      for (int inner = 0; inner < 3; ++inner) {
        update_g();
        update_v();
      }
    }
  }

  out.traces.resize(cells);
  for (int c = 0; c < cells; ++c) out.traces[c] = vec(traces[c]);
  return out;
}

SchemeResult run_miso_scheme(SchemeId id, const NetworkRealization& real,
                             const SystemConfig& cfg,
                             const TrialSeeds& seeds) {
  if (cfg.ue_antennas != 1) {
    throw StructuralError("run_miso_scheme: requires single-antenna users");
  }
  const int cells = cfg.num_cells;
  const int k_users = cfg.users_per_cell;
  const int users = cfg.total_users();
  const long long training =
      static_cast<long long>(cfg.pilot_len) * (cfg.n_irs + 1);

  if (is_csi_scheme(id)) {
    CsiBundle bundle;
    if (id == SchemeId::perfect_csi) {
      bundle = true_csi_bundle(real, cfg);
    } else {
      bundle = estimated_csi_bundle(real, cfg, seeds,
                                    id == SchemeId::full_chan_est);
    }
    AlternateResult alt = max_sinr_alternate(bundle, cfg, 1, seeds.aux);
    return finish_result(id, real, cfg, alt.irs_w, alt.bank, training,
                         alt.iterations, std::move(alt.flags));
  }

  // Sample-based family: one synchronized sweep, per-cell objective built
  // from the reconstructed blocks, filters read off the synthesized block.
  const Codebook cb = build_codebook(cfg.n_irs, cfg.codebook);
  FilterBank bank;
  bank.g.assign(users, cx_vec(1, arma::fill::ones));
  bank.v.assign(cells, std::vector<cx_vec>(k_users));
  const std::vector<UlStream> streams = per_user_streams(cfg, bank);
  const PilotSet pilots =
      gen_pilots(cfg.pilot_len, users, cfg.pilot_kind, seeds.pilot);
  const vec powers = cfg.user_powers();

  std::vector<cx_vec> irs_w(cells);
  int iterations = 0;
  std::vector<std::string> flags;
  for (int c = 0; c < cells; ++c) {
    const TrainingRecord record = simulate_ul_training(
        real, cb, pilots.b, streams, c, cfg.noise_var,
        derive_seed(seeds.noise, kTagSweepNoise, c));
    const CanonicalBlocks blocks = reconstruct_canonical(record.epochs, cb);

    const uvec own =
        arma::regspace<uvec>(c * k_users, c * k_users + k_users - 1);
    const mat pilots_intra = pilots.b.cols(own);
    const vec powers_intra = powers(own);

    if (id == SchemeId::random_theta) {
      irs_w[c] = unit_modulus(
          random_phases(cfg.n_irs, derive_seed(seeds.aux, kTagRandomTheta, c)));
    } else {
      DirectContext ctx;
      switch (id) {
        case SchemeId::direct_central:
          ctx = make_central_context(blocks, pilots.b, powers, own,
                                     cfg.assumed_noise_var());
          break;
        case SchemeId::direct_decentral:
          ctx = make_decentral_context(blocks, pilots_intra, powers_intra,
                                       cfg.assumed_noise_var());
          break;
        case SchemeId::ls_obj:
          ctx = make_ls_context(blocks, pilots_intra);
          break;
        default:
          throw StructuralError("run_miso_scheme: unexpected scheme");
      }
      const AscendResult run =
          optimize_phases(direct_phase_objective(ctx), cfg.n_irs, cfg.opt,
                          derive_seed(seeds.aux, kTagOpt, c));
      irs_w[c] = unit_modulus(run.phases);
      iterations += run.iters;
      if (run.stalled) flags.push_back("stalled");
    }

    const YwProjector proj(synthesize_yw(blocks, irs_w[c]));
    if (proj.rank_deficient()) flags.push_back("ls_rank_deficient");
    for (int k = 0; k < k_users; ++k) {
      bank.v[c][k] = proj.filter(pilots.b.col(c * k_users + k));
    }
  }
  return finish_result(id, real, cfg, irs_w, bank, training, iterations,
                       std::move(flags));
}

BidirResult bidirectional_train(SchemeId id, const NetworkRealization& real,
                                const SystemConfig& cfg,
                                const TrialSeeds& seeds) {
  if (is_csi_scheme(id)) {
    throw StructuralError("bidirectional_train: sample-based schemes only");
  }
  const int cells = cfg.num_cells;
  const int k_users = cfg.users_per_cell;
  const int users = cfg.total_users();
  const vec powers = cfg.user_powers();
  const double amp = std::sqrt(cfg.tx_power);
  const Codebook cb = build_codebook(cfg.n_irs, cfg.codebook);

  BidirResult out;
  out.bank.g.assign(users, cx_vec(cfg.ue_antennas, arma::fill::ones));
  out.bank.v.assign(cells, std::vector<cx_vec>(k_users));
  out.irs_w.resize(cells);

  const PilotSet pilots_back =
      gen_pilots(cfg.pilot_len, users, cfg.pilot_kind, seeds.pilot);
  const PilotSet pilots_fwd = gen_pilots(
      cfg.pilot_len, users, cfg.pilot_kind,
      derive_seed(seeds.pilot, kTagForwardPilot));

  int iterations = 0;
  std::vector<std::string> flags;

  // Initial sweep with the all-ones combiners as uplink precoders; each cell
  // jointly picks its filters and weights, then the surfaces stay fixed.
  const std::vector<UlStream> sweep_streams = per_user_streams(cfg, out.bank);
  for (int c = 0; c < cells; ++c) {
    const TrainingRecord record = simulate_ul_training(
        real, cb, pilots_back.b, sweep_streams, c, cfg.noise_var,
        derive_seed(seeds.noise, kTagSweepNoise, c));
    const CanonicalBlocks blocks = reconstruct_canonical(record.epochs, cb);
    const uvec own =
        arma::regspace<uvec>(c * k_users, c * k_users + k_users - 1);

    if (id == SchemeId::random_theta) {
      out.irs_w[c] = unit_modulus(
          random_phases(cfg.n_irs, derive_seed(seeds.aux, kTagRandomTheta, c)));
    } else {
      DirectContext ctx;
      switch (id) {
        case SchemeId::direct_central:
          ctx = make_central_context(blocks, pilots_back.b, powers, own,
                                     cfg.assumed_noise_var());
          break;
        case SchemeId::direct_decentral:
          ctx = make_decentral_context(blocks, pilots_back.b.cols(own),
                                       powers(own), cfg.assumed_noise_var());
          break;
        case SchemeId::ls_obj:
          ctx = make_ls_context(blocks, pilots_back.b.cols(own));
          break;
        default:
          throw StructuralError("bidirectional_train: unexpected scheme");
      }
      const AscendResult run =
          optimize_phases(direct_phase_objective(ctx), cfg.n_irs, cfg.opt,
                          derive_seed(seeds.aux, kTagOpt, c));
      out.irs_w[c] = unit_modulus(run.phases);
      iterations += run.iters;
      if (run.stalled) flags.push_back("stalled");
    }

    const YwProjector proj(synthesize_yw(blocks, out.irs_w[c]));
    for (int k = 0; k < k_users; ++k) {
      out.bank.v[c][k] = proj.filter(pilots_back.b.col(c * k_users + k));
    }
  }

  for (int round = 1; round <= cfg.n_fb; ++round) {
    // Forward: every BTS superposes its precoded streams; each UE updates
    // its LS filter against its own forward pilot.
    std::vector<DlStream> dl_streams;
    for (int c = 0; c < cells; ++c) {
      for (int k = 0; k < k_users; ++k) {
        dl_streams.push_back(DlStream{c, dl_precoder(out.bank.v[c][k]), amp});
      }
    }
    for (int m = 0; m < users; ++m) {
      const cx_mat y_fwd = simulate_dl_training(
          real, pilots_fwd.b, dl_streams, out.irs_w, m, cfg.noise_var,
          derive_seed(seeds.noise, kTagForwardNoise, round, m));
      out.bank.g[m] = ls_filter(y_fwd, pilots_fwd.b.col(m));
    }

    // Backward: one fixed-surface epoch per cell with the refreshed UE
    // precoders; the BTS filters are re-estimated.
    const std::vector<UlStream> ul_streams = per_user_streams(cfg, out.bank);
    for (int c = 0; c < cells; ++c) {
      const cx_mat y_back = simulate_ul_epoch(
          real, out.irs_w[c], pilots_back.b, ul_streams, c, cfg.noise_var,
          derive_seed(seeds.noise, kTagBackwardNoise, round, c));
      const YwProjector proj(y_back);
      for (int k = 0; k < k_users; ++k) {
        out.bank.v[c][k] = proj.filter(pilots_back.b.col(c * k_users + k));
      }
    }
  }

  const long long training = static_cast<long long>(cfg.pilot_len) *
                             (cfg.n_irs + 1 + 2 * cfg.n_fb);
  out.result = finish_result(id, real, cfg, out.irs_w, out.bank, training,
                             iterations, std::move(flags));
  return out;
}

SchemeResult run_scheme(SchemeId id, const NetworkRealization& real,
                        const SystemConfig& cfg, const TrialSeeds& seeds) {
  if (cfg.ue_antennas == 1) return run_miso_scheme(id, real, cfg, seeds);
  if (is_csi_scheme(id)) {
    CsiBundle bundle;
    if (id == SchemeId::perfect_csi) {
      bundle = true_csi_bundle(real, cfg);
    } else {
      bundle = estimated_csi_bundle(real, cfg, seeds,
                                    id == SchemeId::full_chan_est);
    }
    AlternateResult alt = max_sinr_alternate(bundle, cfg, cfg.n_alt, seeds.aux);
    const long long training =
        static_cast<long long>(cfg.pilot_len) * (cfg.n_irs + 1);
    return finish_result(id, real, cfg, alt.irs_w, alt.bank, training,
                         alt.iterations, std::move(alt.flags));
  }
  return bidirectional_train(id, real, cfg, seeds).result;
}

}  // namespace irsbench
