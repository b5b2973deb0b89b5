#include "irsbench/phaseopt.hpp"

#include <numbers>

namespace irsbench {

vec fd_gradient(const std::function<double(const vec&)>& f, const vec& phases,
                double step) {
  vec grad(phases.n_elem, arma::fill::zeros);
  vec probe = phases;
  for (arma::uword j = 0; j < phases.n_elem; ++j) {
    probe(j) = phases(j) + step;
    const double up = f(probe);
    probe(j) = phases(j) - step;
    const double down = f(probe);
    probe(j) = phases(j);
    grad(j) = (up - down) / (2.0 * step);
  }
  return grad;
}

vec gradient(const PhaseObjective& obj, const vec& phases,
             const OptimizerSettings& settings) {
  if (obj.grad) {
    vec g;
    if (obj.grad(phases, &g)) return g;
  }
  return fd_gradient(obj.value, phases, settings.fd_step);
}

vec greedy_init(const PhaseObjective& obj, int n_irs,
                const OptimizerSettings& settings) {
  vec phases(n_irs, arma::fill::zeros);
  const double step = 2.0 * std::numbers::pi / settings.grid_points;
  for (int j = 0; j < n_irs; ++j) {
    double best_phase = 0.0;
    double best_value = -arma::datum::inf;
    for (int i = 0; i < settings.grid_points; ++i) {
      phases(j) = step * i;
      const double value = obj.value(phases);
      if (value > best_value) {
        best_value = value;
        best_phase = phases(j);
      }
    }
    phases(j) = best_phase;
  }
  return phases;
}

AscendResult ascend(const PhaseObjective& obj, vec phases0,
                    const OptimizerSettings& settings) {
  AscendResult res;
  res.phases = std::move(phases0);
  res.value = obj.value(res.phases);

  std::vector<double> trace{res.value};
  for (int iter = 0; iter < settings.max_iters; ++iter) {
    if (res.phases.n_elem == 0) break;
    const vec g = gradient(obj, res.phases, settings);
    const double gnorm2 = arma::dot(g, g);
    if (std::sqrt(gnorm2) < settings.grad_tol) break;

    double alpha = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < settings.max_backtracks; ++bt) {
      const vec candidate = res.phases + alpha * g;
      const double value = obj.value(candidate);
      if (value >= res.value + settings.armijo_c1 * alpha * gnorm2) {
        res.phases = candidate;
        res.value = value;
        accepted = true;
        break;
      }
      alpha *= settings.armijo_beta;
    }
    if (!accepted) {
      res.stalled = true;
      break;
    }
    ++res.iters;
    trace.push_back(res.value);
  }
  res.trace = vec(trace);
  return res;
}

AscendResult ascend_to_convergence(const PhaseObjective& obj, vec phases0,
                                   const OptimizerSettings& settings) {
  AscendResult total = ascend(obj, std::move(phases0), settings);
  int last_iters = total.iters;
  const int max_legs = 8;
  for (int leg = 1; leg < max_legs; ++leg) {
    // a leg that ended inside its budget has converged or stalled
    if (total.stalled || last_iters < settings.max_iters) break;
    AscendResult next = ascend(obj, total.phases, settings);
    const double gain = next.value - total.value;
    last_iters = next.iters;
    total.phases = std::move(next.phases);
    total.value = next.value;
    total.stalled = next.stalled;
    total.iters += next.iters;
    if (next.iters > 0) {
      total.trace =
          arma::join_cols(total.trace, vec(next.trace.tail(next.iters)));
    }
    if (gain <= 1e-5 * (1.0 + std::abs(total.value))) break;
  }
  return total;
}

AscendResult optimize_phases(const PhaseObjective& obj, int n_irs,
                             const OptimizerSettings& settings,
                             std::uint64_t seed) {
  AscendResult best =
      ascend_to_convergence(obj, greedy_init(obj, n_irs, settings), settings);
  int total_iters = best.iters;
  for (int s = 1; s < settings.n_starts; ++s) {
    Rng rng(derive_seed(seed, 0x57A7, s));
    vec phases0(n_irs, arma::fill::none);
    for (int j = 0; j < n_irs; ++j) {
      phases0(j) = 2.0 * std::numbers::pi * rng.uniform();
    }
    AscendResult run = ascend_to_convergence(obj, std::move(phases0), settings);
    total_iters += run.iters;
    if (run.value > best.value) best = std::move(run);
  }
  best.iters = total_iters;
  return best;
}

}  // namespace irsbench
