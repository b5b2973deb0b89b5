/**
 * @file config.hpp
 * @brief Static system parameters of one simulated multi-cell network.
 */
#pragma once

#include <cstdint>

#include "irsbench/common.hpp"
#include "irsbench/phaseopt.hpp"

namespace irsbench {

struct SystemConfig {
  int num_cells = 2;
  int users_per_cell = 2;   // K
  int n_irs = 16;           // reflecting elements per cell
  int bts_antennas = 6;     // M_R
  int ue_antennas = 1;      // N_T; 1 selects the one-shot MISO pipeline
  double rician_factor = 10.0;  // LoS-to-scatter power ratio, BTS-IRS link
  double cross_gain = 0.5011872336272722;  // -3 dB cross-cell attenuation
  double tx_power = 1.0;    // per-user symbol variance sigma_k^2
  double noise_var = 10.0;  // sigma_n^2
  int pilot_len = 16;       // T, symbols per training epoch
  int n_fb = 2;             // forward-backward rounds (MIMO schemes)
  std::uint64_t rng_seed = 1;

  PilotKind pilot_kind = PilotKind::random;
  CodebookKind codebook = CodebookKind::dft;
  double noise_mismatch_db = 0.0;  // offset applied to the assumed sigma_n^2
  bool csi_joint_ls = false;       // joint LS across in-scope pilot streams
  int n_alt = 3;                   // alternations for the CSI-based schemes
  OptimizerSettings opt;

  int total_users() const { return num_cells * users_per_cell; }
  int interferers() const { return (num_cells - 1) * users_per_cell; }
  int cell_of(int user) const { return user / users_per_cell; }
  bool is_intra(int cell, int user) const { return cell_of(user) == cell; }

  /// sigma_n^2 as assumed by the sample-based objectives (possibly offset).
  double assumed_noise_var() const {
    return noise_var * std::pow(10.0, noise_mismatch_db / 10.0);
  }

  vec user_powers() const { return vec(total_users(), arma::fill::value(tx_power)); }

  void validate() const;  // throws ConfigError naming the offending field
};

}  // namespace irsbench
