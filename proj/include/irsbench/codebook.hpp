/**
 * @file codebook.hpp
 * @brief Unitary training codebooks for the reflecting surface and the
 *        reconstruction of canonical-element receptions from coded sweeps.
 */
#pragma once

#include <vector>

#include "irsbench/common.hpp"

namespace irsbench {

/// Ordered set of N_IRS+1 diagonal training configurations. For the unitary
/// kinds A is symmetric with all-ones first row/column and satisfies
/// A conj(A) = (N_IRS+1) I; epoch j applies the conjugated entries 2..N+1 of
/// column j of A. The canonical kind activates one element per epoch plus an
/// all-off epoch and carries no mixing matrix.
struct Codebook {
  CodebookKind kind = CodebookKind::dft;
  int n_irs = 0;
  cx_mat A;                     // (N+1) x (N+1); empty for canonical
  std::vector<cx_vec> thetas;   // N+1 diagonals, each length N
  int epochs() const { return n_irs + 1; }
};

/// Builds a codebook. Hadamard requires n_irs+1 to be a power of two;
/// the DFT kind exists for every size.
Codebook build_codebook(int n_irs, CodebookKind kind);

/// Direct-path block plus one block per canonical element, each the shape of
/// a received epoch.
struct CanonicalBlocks {
  cx_mat y0;
  std::vector<cx_mat> ycan;
  int n_irs() const { return static_cast<int>(ycan.size()); }
};

/// Unmixes a full codebook sweep into the equivalent canonical receptions.
/// Exact for noiseless inputs; a fixed linear map of the epochs otherwise.
CanonicalBlocks reconstruct_canonical(const std::vector<cx_mat>& epochs,
                                      const Codebook& cb);

/// Received block for arbitrary weights w, affine in w:
/// y_w = sum_j w_j (ycan_j - y0) + y0.
cx_mat synthesize_yw(const CanonicalBlocks& blocks, const cx_vec& w);

}  // namespace irsbench
