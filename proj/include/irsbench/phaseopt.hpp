/**
 * @file phaseopt.hpp
 * @brief Maximization over unit-modulus reflection weights: greedy phase-grid
 *        initialization plus gradient ascent with Armijo backtracking.
 */
#pragma once

#include <cstdint>
#include <functional>

#include "irsbench/common.hpp"

namespace irsbench {

struct OptimizerSettings {
  int grid_points = 8;       // greedy phase grid resolution
  int max_iters = 200;
  double grad_tol = 1e-5;
  double armijo_c1 = 1e-4;
  double armijo_beta = 0.5;  // backtracking factor, in (0,1)
  int max_backtracks = 30;
  double fd_step = 1e-5;     // finite-difference probe [rad]
  int n_starts = 1;          // extra random restarts
  void validate() const;     // throws ConfigError
};

/// Objective over the phase vector. `value` is required; `grad` is optional
/// and may decline (return false) at points where no analytic form exists,
/// in which case central finite differences are used.
struct PhaseObjective {
  std::function<double(const vec&)> value;
  std::function<bool(const vec&, vec*)> grad;
};

/// Central finite differences, one probe pair per coordinate.
vec fd_gradient(const std::function<double(const vec&)>& f, const vec& phases,
                double step);

/// Analytic gradient when the objective provides one, FD otherwise.
vec gradient(const PhaseObjective& obj, const vec& phases,
             const OptimizerSettings& settings);

/// Single sequential pass: coordinate j picks the best grid phase with
/// earlier coordinates fixed and later ones at zero.
vec greedy_init(const PhaseObjective& obj, int n_irs,
                const OptimizerSettings& settings);

struct AscendResult {
  vec phases;
  double value = 0.0;
  vec trace;           // objective at phi0 and after every accepted step
  int iters = 0;
  bool stalled = false;  // Armijo backtracking exhausted
};

AscendResult ascend(const PhaseObjective& obj, vec phases0,
                    const OptimizerSettings& settings);

/// Chains ascent legs from each landing point until a leg converges inside
/// its iteration cap or stops making progress. Every leg obeys the ascend
/// contract; the combined trace stays nondecreasing.
AscendResult ascend_to_convergence(const PhaseObjective& obj, vec phases0,
                                   const OptimizerSettings& settings);

/// Greedy initialization followed by ascent-to-convergence; with
/// settings.n_starts > 1 adds seeded random restarts and keeps the best run.
AscendResult optimize_phases(const PhaseObjective& obj, int n_irs,
                             const OptimizerSettings& settings,
                             std::uint64_t seed = 0);

}  // namespace irsbench
