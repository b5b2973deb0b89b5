#include "irsbench/codebook.hpp"

#include <numbers>
#include <sstream>

namespace irsbench {

namespace {

bool is_power_of_two(int x) { return x >= 1 && (x & (x - 1)) == 0; }

cx_mat dft_matrix(int size) {
  cx_mat a(size, size, arma::fill::none);
  const double step = -2.0 * std::numbers::pi / size;
  for (int p = 0; p < size; ++p) {
    for (int q = 0; q < size; ++q) {
      a(p, q) = std::polar(1.0, step * static_cast<double>(p) * q);
    }
  }
  return a;
}

cx_mat hadamard_matrix(int size) {
  mat h(1, 1, arma::fill::ones);
  while (static_cast<int>(h.n_rows) < size) {
    h = arma::join_vert(arma::join_horiz(h, h), arma::join_horiz(h, -h));
  }
  return arma::conv_to<cx_mat>::from(h);
}

}  // namespace

Codebook build_codebook(int n_irs, CodebookKind kind) {
  if (n_irs < 0) throw ConfigError("build_codebook: n_irs must be >= 0");
  Codebook cb;
  cb.kind = kind;
  cb.n_irs = n_irs;
  const int size = n_irs + 1;

  if (kind == CodebookKind::canonical) {
    cb.thetas.resize(size);
    for (int j = 0; j < n_irs; ++j) {
      cb.thetas[j] = cx_vec(n_irs, arma::fill::zeros);
      cb.thetas[j](j) = 1.0;
    }
    cb.thetas[n_irs] = cx_vec(n_irs, arma::fill::zeros);
    return cb;
  }

  if (kind == CodebookKind::hadamard && !is_power_of_two(size)) {
    std::ostringstream msg;
    msg << "hadamard codebook needs n_irs+1 to be a power of two; got n_irs="
        << n_irs << " (valid n_irs: 1, 3, 7, 15, 31, 63, ...)";
    throw ConfigError(msg.str());
  }

  cb.A = (kind == CodebookKind::dft) ? dft_matrix(size) : hadamard_matrix(size);
  cb.thetas.resize(size);
  for (int j = 0; j < size; ++j) {
    // Entry 1 of each column is reserved for the direct path.
    cb.thetas[j] = arma::conj(cb.A.col(j).subvec(1, size - 1));
  }
  return cb;
}

CanonicalBlocks reconstruct_canonical(const std::vector<cx_mat>& epochs,
                                      const Codebook& cb) {
  if (cb.kind == CodebookKind::canonical) {
    throw StructuralError("reconstruct_canonical: sweep must use a unitary codebook");
  }
  const int size = cb.epochs();
  if (static_cast<int>(epochs.size()) != size) {
    throw StructuralError("reconstruct_canonical: epoch count does not match the codebook");
  }
  const arma::uword rows = epochs[0].n_rows;
  const arma::uword cols = epochs[0].n_cols;
  for (const auto& e : epochs) {
    if (e.n_rows != rows || e.n_cols != cols) {
      throw StructuralError("reconstruct_canonical: epochs differ in shape");
    }
  }

  // Stacking the epoch observations of one pilot instant against column q of
  // A is the same weighted sum for every instant, so whole epoch matrices can
  // be combined at once.
  const double scale = 1.0 / size;
  CanonicalBlocks blocks;
  blocks.y0 = cx_mat(rows, cols, arma::fill::zeros);
  for (int p = 0; p < size; ++p) blocks.y0 += cb.A(p, 0) * epochs[p];
  blocks.y0 *= scale;

  blocks.ycan.resize(cb.n_irs);
  for (int j = 0; j < cb.n_irs; ++j) {
    cx_mat acc(rows, cols, arma::fill::zeros);
    for (int p = 0; p < size; ++p) acc += cb.A(p, j + 1) * epochs[p];
    blocks.ycan[j] = scale * acc + blocks.y0;
  }
  return blocks;
}

cx_mat synthesize_yw(const CanonicalBlocks& blocks, const cx_vec& w) {
  if (static_cast<int>(w.n_elem) != blocks.n_irs()) {
    throw StructuralError("synthesize_yw: weight length does not match the blocks");
  }
  cx_mat yw = blocks.y0;
  for (arma::uword j = 0; j < w.n_elem; ++j) {
    yw += w(j) * (blocks.ycan[j] - blocks.y0);
  }
  return yw;
}

}  // namespace irsbench
