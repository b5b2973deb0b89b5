/**
 * @file topology.hpp
 * @brief Random multi-cell channel realizations and composition of the
 *        effective reflection-assisted channels.
 */
#pragma once

#include <vector>

#include "irsbench/config.hpp"

namespace irsbench {

/// One random draw of every channel in the network. Users are indexed
/// globally (0 .. num_cells*K - 1); user m belongs to cell m / K.
struct NetworkRealization {
  int num_cells = 0;
  int users = 0;
  int n_irs = 0;
  int bts_antennas = 0;
  int ue_antennas = 0;
  // direct[c][m]: BTS c <-> UE m, M_R x N_T
  std::vector<std::vector<cx_mat>> direct;
  // ue_to_irs[c][m]: UE m <-> surface of cell c, N_IRS x N_T
  std::vector<std::vector<cx_mat>> ue_to_irs;
  // bts_to_irs[c]: surface of cell c <-> BTS c, N_IRS x M_R
  std::vector<cx_mat> bts_to_irs;
};

/// Reflection weights of one surface; |w_j| = 1 when built from phases.
struct IrsState {
  cx_vec w;
  static IrsState from_phases(const vec& phases) {
    return IrsState{unit_modulus(phases)};
  }
};

/// Draws iid full-scattering direct and UE-side channels (unit variance
/// intra-cell, cross_gain variance cross-cell) and a Rician BTS-side channel
/// with a rank-one unit-modulus LoS component. Deterministic given seed.
NetworkRealization draw_realization(const SystemConfig& cfg,
                                    std::uint64_t seed);

/// direct[c][m] + bts_to_irs[c]^T diag(w) ue_to_irs[c][m]. The transpose is
/// plain (reciprocity), not conjugated.
cx_mat compose_channel(const NetworkRealization& real, int cell, int user,
                       const cx_vec& w);

/// M_R x N_IRS map C with
///   compose_channel(c, m, w) * precoder = direct * precoder + C * w,
/// i.e. the reflected part of the effective single-stream channel is linear
/// in the weight vector.
cx_mat cascade_matrix(const NetworkRealization& real, int cell, int user,
                      const cx_vec& precoder);

}  // namespace irsbench
