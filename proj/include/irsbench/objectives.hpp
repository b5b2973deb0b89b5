/**
 * @file objectives.hpp
 * @brief True and sample-estimated SINR / sum-rate objectives as functions of
 *        the reflection weight vector.
 */
#pragma once

#include <vector>

#include "irsbench/filters.hpp"
#include "irsbench/phaseopt.hpp"
#include "irsbench/topology.hpp"

namespace irsbench {

/// Uplink SINR of user k for receive filter v given composite channels of
/// every user in scope (interferers included). Zero filter gives 0.
double true_sinr(const std::vector<cx_vec>& composites, const cx_vec& v, int k,
                 const vec& powers, double noise_var);

/// sum_k log2(1 + SINR_k).
double sum_rate(const vec& sinrs);

enum class ObjectiveMode {
  true_csi,
  estimated_csi,
  direct_central,
  direct_decentral,
  ls_residual,
};

/// Sample-based objective data for one BTS: reconstructed training blocks
/// plus the pilot sequences the BTS knows. The decentralized and LS variants
/// are built from intra-cell pilots only; they never see interferer data.
struct DirectContext {
  ObjectiveMode mode = ObjectiveMode::direct_central;
  cx_mat y0;
  std::vector<cx_mat> delta;  // reflected component per element, ycan_j - y0
  cx_mat pilots;              // T x S, in-scope streams only
  vec powers;                 // per stream sigma^2
  uvec own;                   // streams whose rates are summed
  double noise_var_assumed = 0.0;  // unused by the LS-residual mode
  // gradient and synthesis caches
  cx_mat delta_stack;  // (M*T) x N, column j = vectorised delta_j
  cx_mat delta_tall;   // (N*M) x T, row block j = delta_j
  cx_mat e_tall;       // delta_tall * pilots, (N*M) x S

  int n_irs() const { return static_cast<int>(delta.size()); }
  int pilot_len() const { return static_cast<int>(pilots.n_rows); }
  int n_streams() const { return static_cast<int>(pilots.n_cols); }
  cx_mat synthesize(const cx_vec& w) const;
};

DirectContext make_central_context(const CanonicalBlocks& blocks,
                                   const mat& pilots_all,
                                   const vec& powers_all, const uvec& own,
                                   double noise_var_assumed);
/// Intra-cell pilots only; every stream is an own stream.
DirectContext make_decentral_context(const CanonicalBlocks& blocks,
                                     const mat& pilots_intra,
                                     const vec& powers_intra,
                                     double noise_var_assumed);
/// LS-residual surrogate; needs neither powers nor a noise estimate.
DirectContext make_ls_context(const CanonicalBlocks& blocks,
                              const mat& pilots_intra);

/// sum_{k in own} log2(1 + gamma_k(w)) with gamma_k the projection-statistic
/// SINR estimate. Finite for degenerate blocks (pseudo-inverse path).
double direct_objective(const DirectContext& ctx, const cx_vec& w);

/// sum_{k in own} log2(b_k^H (I - P) b_k); smaller is better. Residuals are
/// clamped at 1e-12; `clamped` reports whether the clamp fired.
double ls_objective(const DirectContext& ctx, const cx_vec& w,
                    bool* clamped = nullptr);

/// Analytic phase gradients on the invertible-Gram path. Return false when
/// the factorization is rank deficient; callers then fall back to finite
/// differences.
bool direct_objective_grad(const DirectContext& ctx, const vec& phases,
                           vec* grad);
bool ls_objective_grad(const DirectContext& ctx, const vec& phases, vec* grad);

/// Channel-knowledge objective data for one BTS: affine composite maps
/// h_s(w) = direct_eff + cascade_eff * w per effective stream.
struct CsiContext {
  ObjectiveMode mode = ObjectiveMode::true_csi;
  std::vector<cx_vec> direct_eff;   // per stream, M_R
  std::vector<cx_mat> cascade_eff;  // per stream, M_R x N_IRS
  vec powers;
  uvec own;
  double noise_var = 0.0;

  int n_streams() const { return static_cast<int>(direct_eff.size()); }
  int n_irs() const {
    return direct_eff.empty() ? 0 : static_cast<int>(cascade_eff[0].n_cols);
  }
  cx_vec composite(int s, const cx_vec& w) const;
};

/// sum_{k in own} log2(1 + SINR_k(w)) with the MMSE filter substituted for
/// every user (the filter argument of the maximization is implicit).
double csi_objective(const CsiContext& ctx, const cx_vec& w);

/// Exact gradient via stationarity of the MMSE filters.
vec csi_objective_grad(const CsiContext& ctx, const vec& phases);

/// Optimizer adapters. The LS-residual variant is negated so that all three
/// are maximized.
PhaseObjective direct_phase_objective(const DirectContext& ctx);
PhaseObjective csi_phase_objective(const CsiContext& ctx);

}  // namespace irsbench
