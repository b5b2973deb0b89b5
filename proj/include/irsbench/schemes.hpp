/**
 * @file schemes.hpp
 * @brief The compared optimization schemes, end to end: channel-knowledge
 *        alternation, sample-based one-shot optimization, and bi-directional
 *        training for MIMO links.
 */
#pragma once

#include <array>
#include <string>
#include <vector>

#include "irsbench/objectives.hpp"

namespace irsbench {

enum class SchemeId {
  perfect_csi,
  full_chan_est,
  partial_chan_est,
  direct_central,
  direct_decentral,
  ls_obj,
  random_theta,
};

inline constexpr std::array<SchemeId, 7> kAllSchemes = {
    SchemeId::perfect_csi,     SchemeId::full_chan_est,
    SchemeId::partial_chan_est, SchemeId::direct_central,
    SchemeId::direct_decentral, SchemeId::ls_obj,
    SchemeId::random_theta,
};

std::string to_string(SchemeId id);
SchemeId scheme_from_string(const std::string& name);  // throws ConfigError
/// Column name used in emitted tables.
std::string csv_column(SchemeId id);

struct SchemeResult {
  SchemeId scheme = SchemeId::perfect_csi;
  vec per_user_dl_rate;  // all served users, global order
  double dl_sum_rate = 0.0;
  double ul_sum_rate = 0.0;
  long long training_symbols_used = 0;
  int iterations = 0;  // total accepted ascent steps
  std::vector<std::string> flags;
};

/// Seed bundle shared by every scheme of one Monte-Carlo trial so that all
/// schemes see identical channels, pilots and noise.
struct TrialSeeds {
  std::uint64_t channel = 0;
  std::uint64_t pilot = 0;
  std::uint64_t noise = 0;
  std::uint64_t aux = 0;  // scheme-local draws (random phases, restarts)
  static TrialSeeds for_trial(std::uint64_t master, std::uint64_t trial);
};

/// Receive filters of the whole network: BTS-side v per (cell, intra user)
/// and UE-side downlink filters g per global user. Uplink precoders are the
/// normalized conjugates of g.
struct FilterBank {
  std::vector<std::vector<cx_vec>> v;  // [cell][k], M_R
  std::vector<cx_vec> g;               // [user], N_T
};

/// Normalized conjugate, or zero when the filter is zero.
cx_vec ul_precoder(const cx_vec& g);
cx_vec dl_precoder(const cx_vec& v);

/// Per-user downlink rates with true channels: every BTS transmits all its
/// precoded streams, UE m combines with g[m].
vec eval_dl_rates(const NetworkRealization& real, const SystemConfig& cfg,
                  const std::vector<cx_vec>& irs_w, const FilterBank& bank);
/// Per-user uplink rates with true channels.
vec eval_ul_rates(const NetworkRealization& real, const SystemConfig& cfg,
                  const std::vector<cx_vec>& irs_w, const FilterBank& bank);

/// Channel knowledge of every BTS. `cells[c]` holds what BTS c knows (exact
/// or estimated, scope per scheme); cross_cell marks whether estimates are
/// exchanged between cells (UE-side updates may then use all of them).
struct CsiBundle {
  std::vector<CsiEstimate> cells;
  bool cross_cell = true;
};

/// Exact channel knowledge for every (cell, user) pair.
CsiBundle true_csi_bundle(const NetworkRealization& real,
                          const SystemConfig& cfg);

/// Synchronized sweep at every BTS followed by per-cell estimation.
/// full_scope estimates all users' channels, otherwise intra-cell only.
CsiBundle estimated_csi_bundle(const NetworkRealization& real,
                               const SystemConfig& cfg,
                               const TrialSeeds& seeds, bool full_scope);

struct AlternateResult {
  std::vector<cx_vec> irs_w;
  FilterBank bank;
  std::vector<vec> traces;  // per cell, objective after each weight update
  int iterations = 0;
  std::vector<std::string> flags;
};

/// Coordinate updates given channel knowledge: MMSE uplink filters and (for
/// MIMO) MMSE downlink combiners at fixed weights, then gradient ascent over
/// the weights with the filters implicit.
AlternateResult max_sinr_alternate(const CsiBundle& bundle,
                                   const SystemConfig& cfg, int n_alt,
                                   std::uint64_t opt_seed);

/// One-shot pipeline for single-antenna users (N_T = 1).
SchemeResult run_miso_scheme(SchemeId id, const NetworkRealization& real,
                             const SystemConfig& cfg, const TrialSeeds& seeds);

struct BidirResult {
  std::vector<cx_vec> irs_w;
  FilterBank bank;
  SchemeResult result;
};

/// Synchronized forward-backward training: one initial uplink sweep with
/// joint filter/weight optimization (weights then stay fixed), followed by
/// n_fb rounds of downlink and uplink LS filter updates.
BidirResult bidirectional_train(SchemeId id, const NetworkRealization& real,
                                const SystemConfig& cfg,
                                const TrialSeeds& seeds);

/// Dispatches on cfg.ue_antennas: the MISO one-shot pipeline, or for MIMO the
/// offline alternation (channel-estimation schemes) / bi-directional training
/// (sample-based schemes and random weights).
SchemeResult run_scheme(SchemeId id, const NetworkRealization& real,
                        const SystemConfig& cfg, const TrialSeeds& seeds);

}  // namespace irsbench
