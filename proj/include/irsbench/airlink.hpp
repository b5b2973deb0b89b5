/**
 * @file airlink.hpp
 * @brief Pilot generation and synthesis of synchronized uplink/downlink
 *        training receptions, including receiver noise.
 */
#pragma once

#include <vector>

#include "irsbench/codebook.hpp"
#include "irsbench/topology.hpp"

namespace irsbench {

/// Binary pilot sequences, one column per transmit stream, entries +-1.
/// Power scaling is applied at transmit time via the stream amplitude.
struct PilotSet {
  mat b;  // T x n_streams
  PilotKind kind = PilotKind::random;
  int pilot_len() const { return static_cast<int>(b.n_rows); }
  int n_streams() const { return static_cast<int>(b.n_cols); }
};

/// iid equiprobable +-1 sequences, independent across streams. The walsh
/// kind returns mutually orthogonal columns and requires pilot_len to be a
/// power of two with n_streams <= pilot_len.
PilotSet gen_pilots(int pilot_len, int n_streams, PilotKind kind,
                    std::uint64_t seed);

/// One uplink transmit stream: UE `user` sends its pilot column through
/// `precoder` (length N_T) scaled by `amplitude`.
struct UlStream {
  int user = 0;
  cx_vec precoder;
  double amplitude = 1.0;
};

/// One downlink transmit stream: BTS `cell` sends a pilot column through
/// `precoder` (length M_R) scaled by `amplitude`.
struct DlStream {
  int cell = 0;
  cx_vec precoder;
  double amplitude = 1.0;
};

/// Stacked received pilot blocks of one codebook sweep at one BTS.
struct TrainingRecord {
  std::vector<cx_mat> epochs;  // each M_R x T
  double noise_var = 0.0;
};

/// Reception at BTS `cell` for a single epoch with the surface at `theta`.
/// All streams transmit simultaneously; noise is iid complex Gaussian with
/// per-entry variance noise_var.
cx_mat simulate_ul_epoch(const NetworkRealization& real, const cx_vec& theta,
                         const mat& pilots,
                         const std::vector<UlStream>& streams, int cell,
                         double noise_var, std::uint64_t seed);

/// Full synchronized sweep: the pilot block is repeated once per codebook
/// entry with independent noise per epoch.
TrainingRecord simulate_ul_training(const NetworkRealization& real,
                                    const Codebook& cb, const mat& pilots,
                                    const std::vector<UlStream>& streams,
                                    int cell, double noise_var,
                                    std::uint64_t seed);

/// Reception at UE `user` (N_T x T) when all BTSs transmit their precoded
/// pilot blocks simultaneously with the surfaces fixed at irs_w. Downlink
/// channels are the plain transposes of the uplink composites.
cx_mat simulate_dl_training(const NetworkRealization& real, const mat& pilots,
                            const std::vector<DlStream>& streams,
                            const std::vector<cx_vec>& irs_w, int user,
                            double noise_var, std::uint64_t seed);

}  // namespace irsbench
