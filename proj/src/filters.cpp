#include "irsbench/filters.hpp"

#include <algorithm>

namespace irsbench {

namespace {

cx_mat to_cx(const mat& b) { return arma::conv_to<cx_mat>::from(b); }

}  // namespace

YwProjector::YwProjector(cx_mat yw) : yw_(std::move(yw)) {
  const arma::uword m = yw_.n_rows;
  const arma::uword t = yw_.n_cols;
  if (t >= m && m > 0) {
    const cx_mat gram = yw_ * yw_.t();
    if (arma::chol(chol_, gram)) {
      const vec d = arma::abs(chol_.diag());
      if (d.min() > 1e-7 * d.max()) {
        gram_ = true;
        rank_ = static_cast<int>(m);
        return;
      }
    }
  }
  // Rank-deficient or ill-conditioned Gram matrix: thin SVD, truncated at the
  // usual max(m,t) * eps * s_max threshold.
  cx_mat u;
  vec s;
  cx_mat v;
  if (!arma::svd_econ(u, s, v, yw_)) {
    throw std::runtime_error("YwProjector: SVD failed");
  }
  const double tol = std::max(m, t) * arma::datum::eps * (s.n_elem ? s.max() : 0.0);
  arma::uword r = 0;
  while (r < s.n_elem && s(r) > tol) ++r;
  rank_ = static_cast<int>(r);
  u_ = u.head_cols(r);
  s_ = s.head(r);
  v_ = v.head_cols(r);
}

cx_mat YwProjector::gram_solve(const cx_mat& x) const {
  if (!gram_) throw std::logic_error("gram_solve: factorization is not on the Gram path");
  // Hand-rolled substitution with G = R^H R; the matrices are small enough
  // that library calls would be dominated by their own setup cost.
  const arma::uword m = chol_.n_rows;
  cx_mat out = x;
  const cx* r = chol_.memptr();
  for (arma::uword col = 0; col < out.n_cols; ++col) {
    cx* b = out.colptr(col);
    // forward: R^H y = b, R^H is lower triangular with (i,j) = conj(R(j,i))
    for (arma::uword i = 0; i < m; ++i) {
      cx acc = b[i];
      for (arma::uword j = 0; j < i; ++j) acc -= std::conj(r[j + i * m]) * b[j];
      b[i] = acc / std::conj(r[i + i * m]);
    }
    // backward: R x = y
    for (arma::uword ii = m; ii-- > 0;) {
      cx acc = b[ii];
      for (arma::uword j = ii + 1; j < m; ++j) acc -= r[ii + j * m] * b[j];
      b[ii] = acc / r[ii + ii * m];
    }
  }
  return out;
}

cx_mat YwProjector::filters(const cx_mat& b) const {
  if (b.n_rows != yw_.n_cols) {
    throw StructuralError("YwProjector: pilot length does not match the block");
  }
  if (gram_) return gram_solve(yw_ * b);
  if (rank_ == 0) return cx_mat(yw_.n_rows, b.n_cols, arma::fill::zeros);
  cx_mat t1 = v_.t() * b;
  t1.each_col() /= arma::conv_to<cx_vec>::from(s_);
  return u_ * t1;
}

cx_vec YwProjector::filter(const vec& b) const {
  return cx_vec(filters(to_cx(b)));
}

cx_mat YwProjector::proj_matrix(const cx_mat& b) const {
  if (b.n_rows != yw_.n_cols) {
    throw StructuralError("YwProjector: pilot length does not match the block");
  }
  if (gram_) {
    const cx_mat sy = yw_ * b;
    return sy.t() * gram_solve(sy);
  }
  if (rank_ == 0) return cx_mat(b.n_cols, b.n_cols, arma::fill::zeros);
  const cx_mat vb = v_.t() * b;
  return vb.t() * vb;
}

cx YwProjector::proj(const vec& bk, const vec& bm) const {
  if (gram_) {
    const cx_vec sk = yw_ * to_cx(bk);
    return arma::cdot(sk, gram_solve(yw_ * to_cx(bm)));
  }
  if (rank_ == 0) return cx(0.0, 0.0);
  return arma::cdot(v_.t() * to_cx(bk), v_.t() * to_cx(bm));
}

vec YwProjector::nq_all(const cx_mat& b) const {
  if (gram_) {
    const cx_mat x = filters(b);
    vec out(b.n_cols, arma::fill::none);
    for (arma::uword s = 0; s < b.n_cols; ++s) {
      out(s) = std::real(arma::cdot(x.col(s), x.col(s)));
    }
    return out;
  }
  if (rank_ == 0) return vec(b.n_cols, arma::fill::zeros);
  cx_mat t1 = v_.t() * b;
  t1.each_col() /= arma::conv_to<cx_vec>::from(s_);
  vec out(b.n_cols, arma::fill::none);
  for (arma::uword s = 0; s < b.n_cols; ++s) {
    out(s) = std::real(arma::cdot(t1.col(s), t1.col(s)));
  }
  return out;
}

double YwProjector::nq(const vec& b) const {
  return nq_all(to_cx(b))(0);
}

cx_vec ls_filter(const cx_mat& yw, const vec& b, LsInfo* info) {
  const YwProjector p(yw);
  if (info != nullptr) {
    info->rank_deficient = p.rank_deficient();
    info->rank = p.rank();
  }
  return p.filter(b);
}

cx proj_stat(const cx_mat& yw, const vec& bk, const vec& bm) {
  return YwProjector(yw).proj(bk, bm);
}

double noise_quadratic(const cx_mat& yw, const vec& bk) {
  return YwProjector(yw).nq(bk);
}

cx_vec mmse_filter(const std::vector<cx_vec>& composites, const vec& powers,
                   double noise_var, int k) {
  if (composites.empty() || k < 0 || k >= static_cast<int>(composites.size())) {
    throw StructuralError("mmse_filter: user index out of range");
  }
  if (powers.n_elem != composites.size()) {
    throw StructuralError("mmse_filter: one power per composite required");
  }
  const arma::uword m = composites[0].n_elem;
  cx_mat cov(m, m, arma::fill::eye);
  cov *= noise_var;
  for (std::size_t i = 0; i < composites.size(); ++i) {
    cov += powers(i) * (composites[i] * composites[i].t());
  }
  return arma::solve(cov, composites[k], arma::solve_opts::likely_sympd) *
         powers(k);
}

int CsiEstimate::index_of(int user) const {
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (users[i] == user) return static_cast<int>(i);
  }
  return -1;
}

cx_mat CsiEstimate::composite(int idx, const cx_vec& w) const {
  if (idx < 0 || idx >= static_cast<int>(users.size())) {
    throw StructuralError("CsiEstimate: index out of scope");
  }
  if (w.n_elem != cascade[idx].size()) {
    throw StructuralError("CsiEstimate: weight length does not match the cascade");
  }
  cx_mat h = direct_hat[idx];
  for (arma::uword j = 0; j < w.n_elem; ++j) h += w(j) * cascade[idx][j];
  return h;
}

CsiEstimate estimate_csi(const TrainingRecord& record, const Codebook& cb,
                         const mat& pilots_scope,
                         const std::vector<StreamDesc>& streams, int n_t,
                         bool joint_ls) {
  if (static_cast<int>(pilots_scope.n_cols) !=
      static_cast<int>(streams.size())) {
    throw StructuralError("estimate_csi: one pilot column per stream required");
  }
  const CanonicalBlocks blocks = reconstruct_canonical(record.epochs, cb);
  const double t = static_cast<double>(pilots_scope.n_rows);
  const arma::uword n_streams = pilots_scope.n_cols;
  const cx_mat bc = to_cx(pilots_scope);

  // Per-stream channel estimates for one block: matched-filter correlation
  // Y b_s / (T amp_s), or a joint LS fit across the scope.
  mat btb;
  bool btb_ok = false;
  if (joint_ls && n_streams > 0) {
    btb = pilots_scope.t() * pilots_scope;
    btb_ok = arma::rank(btb) == n_streams;
  }
  auto per_stream = [&](const cx_mat& y) -> cx_mat {
    cx_mat est;
    if (joint_ls && btb_ok) {
      est = arma::solve(arma::conv_to<cx_mat>::from(btb), (y * bc).st()).st();
    } else {
      est = y * bc / t;
    }
    for (arma::uword s = 0; s < n_streams; ++s) est.col(s) /= streams[s].amplitude;
    return est;
  };

  const cx_mat est0 = per_stream(blocks.y0);
  std::vector<cx_mat> estj(blocks.n_irs());
  for (int j = 0; j < blocks.n_irs(); ++j) estj[j] = per_stream(blocks.ycan[j]);

  CsiEstimate out;
  const arma::uword mr = blocks.y0.n_rows;
  for (std::size_t s = 0; s < streams.size(); ++s) {
    const StreamDesc& sd = streams[s];
    if (sd.antenna < 0 || sd.antenna >= n_t) {
      throw StructuralError("estimate_csi: stream antenna out of range");
    }
    int idx = out.index_of(sd.user);
    if (idx < 0) {
      idx = static_cast<int>(out.users.size());
      out.users.push_back(sd.user);
      out.direct_hat.emplace_back(mr, n_t, arma::fill::zeros);
      out.cascade.emplace_back(blocks.n_irs(),
                               cx_mat(mr, n_t, arma::fill::zeros));
    }
    out.direct_hat[idx].col(sd.antenna) = est0.col(s);
    for (int j = 0; j < blocks.n_irs(); ++j) {
      out.cascade[idx][j].col(sd.antenna) = estj[j].col(s) - est0.col(s);
    }
  }
  return out;
}

}  // namespace irsbench
