#include "irsbench/config.hpp"

namespace irsbench {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError(msg);
}

}  // namespace

void OptimizerSettings::validate() const {
  require(grid_points >= 2, "grid_points must be >= 2");
  require(max_iters >= 0, "max_iters must be >= 0");
  require(grad_tol > 0.0, "grad_tol must be > 0");
  require(armijo_c1 > 0.0, "armijo_c1 must be > 0");
  require(armijo_beta > 0.0 && armijo_beta < 1.0,
          "armijo_beta must be in (0, 1)");
  require(max_backtracks >= 1, "max_backtracks must be >= 1");
  require(fd_step > 0.0, "fd_step must be > 0");
  require(n_starts >= 1, "n_starts must be >= 1");
}

void SystemConfig::validate() const {
  require(num_cells >= 1, "num_cells must be >= 1");
  require(users_per_cell >= 1, "users_per_cell must be >= 1");
  // n_irs = 0 means no reflecting surface; needed e.g. for direct-path
  // reference scenarios.
  require(n_irs >= 0, "n_irs must be >= 0");
  require(bts_antennas >= 1, "bts_antennas must be >= 1");
  require(ue_antennas >= 1, "ue_antennas must be >= 1");
  require(rician_factor >= 0.0, "rician_factor must be >= 0");
  require(cross_gain > 0.0 && cross_gain <= 1.0,
          "cross_gain must be in (0, 1]");
  require(tx_power > 0.0, "tx_power must be > 0");
  require(noise_var > 0.0, "noise_var must be > 0");
  require(pilot_len >= 1, "pilot_len must be >= 1");
  require(n_fb >= 0, "n_fb must be >= 0");
  require(n_alt >= 1, "n_alt must be >= 1");
  opt.validate();
}

}  // namespace irsbench
