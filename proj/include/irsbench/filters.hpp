/**
 * @file filters.hpp
 * @brief Least-squares receive filters, projection statistics, MMSE filters
 *        from channel knowledge, and correlation-based channel estimation.
 */
#pragma once

#include <vector>

#include "irsbench/airlink.hpp"
#include "irsbench/codebook.hpp"

namespace irsbench {

struct LsInfo {
  bool rank_deficient = false;
  int rank = 0;
};

/// Minimum-norm least-squares filter (Y Y^H)^+ Y b. Uses the Gram inverse
/// when Y has full row rank and the pseudo-inverse otherwise; `info` reports
/// which path was taken.
cx_vec ls_filter(const cx_mat& yw, const vec& b, LsInfo* info = nullptr);

/// b_k^H P b_m with P the orthogonal projector onto the row space of Y.
cx proj_stat(const cx_mat& yw, const vec& bk, const vec& bm);

/// b^H Y^+ (Y^H)^+ b = ||ls_filter(Y, b)||^2.
double noise_quadratic(const cx_mat& yw, const vec& bk);

/// Shared factorization of one received block: Cholesky of the Gram matrix
/// when it is invertible, thin SVD otherwise. All projection statistics and
/// filters for that block reuse the factorization.
class YwProjector {
 public:
  explicit YwProjector(cx_mat yw);

  const cx_mat& yw() const { return yw_; }
  bool rank_deficient() const { return rank_ < static_cast<int>(yw_.n_rows); }
  int rank() const { return rank_; }
  bool gram_path() const { return gram_; }

  cx_vec filter(const vec& b) const;
  cx proj(const vec& bk, const vec& bm) const;
  double nq(const vec& b) const;

  /// All filters for a pilot matrix B (T x S) at once, M_R x S.
  cx_mat filters(const cx_mat& b) const;
  /// proj(i, j) for every pilot pair, S x S.
  cx_mat proj_matrix(const cx_mat& b) const;
  /// nq for every pilot column.
  vec nq_all(const cx_mat& b) const;

  /// G^{-1} x on the Gram path (unavailable otherwise); used by analytic
  /// objective gradients.
  cx_mat gram_solve(const cx_mat& x) const;

 private:
  cx_mat yw_;
  bool gram_ = false;
  cx_mat chol_;  // upper-triangular R with G = R^H R, well-conditioned
  cx_mat u_;     // thin SVD factors, rank-truncated
  vec s_;
  cx_mat v_;
  int rank_ = 0;
};

/// MMSE uplink filter (sum_m sigma_m^2 h_m h_m^H + sigma_n^2 I)^{-1} h_k
/// sigma_k^2 given composite channels for every user in scope.
cx_vec mmse_filter(const std::vector<cx_vec>& composites, const vec& powers,
                   double noise_var, int k);

/// One estimated transmit stream; `antenna` selects the channel column the
/// stream excites and `amplitude` its transmit scale.
struct StreamDesc {
  int user = 0;
  int antenna = 0;
  double amplitude = 1.0;
};

/// Direct-path and per-element cascade estimates for the users covered by a
/// pilot scope. composite(w) = direct_hat + sum_j w_j cascade[j] is affine
/// in the reflection weights.
struct CsiEstimate {
  std::vector<int> users;  // global ids, scope order
  std::vector<cx_mat> direct_hat;             // per user, M_R x N_T
  std::vector<std::vector<cx_mat>> cascade;   // per user, per element
  int index_of(int user) const;               // -1 when out of scope
  cx_mat composite(int idx, const cx_vec& w) const;
};

/// Unmixes the sweep and correlates each block with the in-scope pilots
/// (matched filter by default, joint LS across the scope when joint_ls).
CsiEstimate estimate_csi(const TrainingRecord& record, const Codebook& cb,
                         const mat& pilots_scope,
                         const std::vector<StreamDesc>& streams, int n_t,
                         bool joint_ls = false);

}  // namespace irsbench
