#include "irsbench/objectives.hpp"

#include <cmath>
#include <memory>

namespace irsbench {

namespace {

constexpr double kResidualFloor = 1e-12;
constexpr double kDenFloor = 1e-300;
const double kLn2 = std::log(2.0);

cx_mat to_cx(const mat& b) { return arma::conv_to<cx_mat>::from(b); }

}  // namespace

double true_sinr(const std::vector<cx_vec>& composites, const cx_vec& v,
                 int k, const vec& powers, double noise_var) {
  if (k < 0 || k >= static_cast<int>(composites.size())) {
    throw StructuralError("true_sinr: user index out of range");
  }
  if (powers.n_elem != composites.size()) {
    throw StructuralError("true_sinr: one power per composite required");
  }
  const double vnorm2 = std::real(arma::cdot(v, v));
  if (vnorm2 == 0.0) return 0.0;
  const double num = powers(k) * std::norm(arma::cdot(v, composites[k]));
  double den = noise_var * vnorm2;
  for (std::size_t m = 0; m < composites.size(); ++m) {
    if (static_cast<int>(m) == k) continue;
    den += powers(m) * std::norm(arma::cdot(v, composites[m]));
  }
  return num / std::max(den, kDenFloor);
}

double sum_rate(const vec& sinrs) {
  double rate = 0.0;
  for (arma::uword i = 0; i < sinrs.n_elem; ++i) {
    if (!(sinrs(i) >= 0.0)) {
      throw StructuralError("sum_rate: SINR values must be >= 0");
    }
    rate += std::log2(1.0 + sinrs(i));
  }
  return rate;
}

cx_mat DirectContext::synthesize(const cx_vec& w) const {
  if (static_cast<int>(w.n_elem) != n_irs()) {
    throw StructuralError("DirectContext: weight length does not match the blocks");
  }
  cx_mat yw = y0;
  if (w.n_elem > 0) {
    yw += arma::reshape(delta_stack * w, y0.n_rows, y0.n_cols);
  }
  return yw;
}

namespace {

DirectContext build_direct_context(ObjectiveMode mode,
                                   const CanonicalBlocks& blocks,
                                   const mat& pilots, const vec& powers,
                                   const uvec& own, double noise_var_assumed) {
  if (pilots.n_rows != blocks.y0.n_cols) {
    throw StructuralError("direct context: pilot length does not match the blocks");
  }
  if (powers.n_elem != pilots.n_cols) {
    throw StructuralError("direct context: one power per pilot stream required");
  }
  for (arma::uword i = 0; i < own.n_elem; ++i) {
    if (own(i) >= pilots.n_cols) {
      throw StructuralError("direct context: own-stream index out of range");
    }
  }
  DirectContext ctx;
  ctx.mode = mode;
  ctx.y0 = blocks.y0;
  ctx.delta.resize(blocks.n_irs());
  for (int j = 0; j < blocks.n_irs(); ++j) ctx.delta[j] = blocks.ycan[j] - blocks.y0;
  ctx.pilots = to_cx(pilots);
  ctx.powers = powers;
  ctx.own = own;
  ctx.noise_var_assumed = noise_var_assumed;
  const arma::uword rows = blocks.y0.n_rows;
  const arma::uword cols = blocks.y0.n_cols;
  ctx.delta_stack.set_size(blocks.y0.n_elem, ctx.delta.size());
  ctx.delta_tall.set_size(ctx.delta.size() * rows, cols);
  for (std::size_t j = 0; j < ctx.delta.size(); ++j) {
    ctx.delta_stack.col(j) = arma::vectorise(ctx.delta[j]);
    ctx.delta_tall.rows(j * rows, (j + 1) * rows - 1) = ctx.delta[j];
  }
  ctx.e_tall = ctx.delta_tall * ctx.pilots;
  return ctx;
}

}  // namespace

DirectContext make_central_context(const CanonicalBlocks& blocks,
                                   const mat& pilots_all,
                                   const vec& powers_all, const uvec& own,
                                   double noise_var_assumed) {
  return build_direct_context(ObjectiveMode::direct_central, blocks,
                              pilots_all, powers_all, own, noise_var_assumed);
}

DirectContext make_decentral_context(const CanonicalBlocks& blocks,
                                     const mat& pilots_intra,
                                     const vec& powers_intra,
                                     double noise_var_assumed) {
  return build_direct_context(
      ObjectiveMode::direct_decentral, blocks, pilots_intra, powers_intra,
      arma::regspace<uvec>(0, pilots_intra.n_cols - 1), noise_var_assumed);
}

DirectContext make_ls_context(const CanonicalBlocks& blocks,
                              const mat& pilots_intra) {
  return build_direct_context(
      ObjectiveMode::ls_residual, blocks, pilots_intra,
      vec(pilots_intra.n_cols, arma::fill::ones),
      arma::regspace<uvec>(0, pilots_intra.n_cols - 1), 0.0);
}

double direct_objective(const DirectContext& ctx, const cx_vec& w) {
  const YwProjector p(ctx.synthesize(w));
  const cx_mat pm = p.proj_matrix(ctx.pilots);
  const vec nq = p.nq_all(ctx.pilots);
  const double t2 = static_cast<double>(ctx.pilot_len()) * ctx.pilot_len();

  double obj = 0.0;
  for (arma::uword i = 0; i < ctx.own.n_elem; ++i) {
    const arma::uword k = ctx.own(i);
    const double num = std::norm(pm(k, k)) / ctx.powers(k);
    double den = t2 * ctx.noise_var_assumed * nq(k);
    for (arma::uword s = 0; s < pm.n_cols; ++s) {
      if (s == k) continue;
      den += std::norm(pm(k, s)) / ctx.powers(s);
    }
    const double gamma = (num > 0.0) ? num / std::max(den, kDenFloor) : 0.0;
    obj += std::log2(1.0 + gamma);
  }
  return obj;
}

double ls_objective(const DirectContext& ctx, const cx_vec& w, bool* clamped) {
  const YwProjector p(ctx.synthesize(w));
  const cx_mat pm = p.proj_matrix(ctx.pilots);
  if (clamped != nullptr) *clamped = false;

  double obj = 0.0;
  for (arma::uword i = 0; i < ctx.own.n_elem; ++i) {
    const arma::uword k = ctx.own(i);
    const double energy = std::real(arma::cdot(ctx.pilots.col(k), ctx.pilots.col(k)));
    double residual = energy - std::real(pm(k, k));
    if (residual < kResidualFloor) {
      residual = kResidualFloor;
      if (clamped != nullptr) *clamped = true;
    }
    obj += std::log2(residual);
  }
  return obj;
}

namespace {

/// Shared pieces of the analytic gradients: derivatives of the projection
/// statistics p_km = b_k^H P(w) b_m and of nq_k = ||v_k||^2 with respect to
/// each phase, valid on the invertible-Gram path.
struct ProjDerivatives {
  cx_mat pm;       // S x S projection statistics
  vec nq;          // S
  arma::cx_cube dp;   // S x S x N, dp(k,m,j) = d p_km / d theta_j
  mat dnq;            // S x N
};

bool proj_derivatives(const DirectContext& ctx, const cx_vec& w,
                      ProjDerivatives* out) {
  const YwProjector p(ctx.synthesize(w));
  if (!p.gram_path()) return false;
  const cx_mat& yw = p.yw();
  const cx_mat& b = ctx.pilots;
  const int n = ctx.n_irs();
  const int n_streams = ctx.n_streams();
  const arma::uword rows = yw.n_rows;

  const cx_mat sy = yw * b;              // M x S
  const cx_mat x = p.gram_solve(sy);     // filters v_m
  const cx_mat u = p.gram_solve(x);      // G^{-2} s_m
  out->pm = sy.t() * x;
  out->nq.set_size(n_streams);
  for (int s = 0; s < n_streams; ++s) {
    out->nq(s) = std::real(arma::cdot(x.col(s), x.col(s)));
  }

  // Batch the per-element products: row block j of these stacks holds
  // delta_j (Y^H v_m) and delta_j (Y^H u_m) for every stream m.
  const cx_mat cj_all = ctx.delta_tall * (yw.t() * x);
  const cx_mat ctj_all = ctx.delta_tall * (yw.t() * u);
  const cx_mat& e_all = ctx.e_tall;

  const auto dot = [rows](const cx* a, const cx* c) {
    cx acc(0, 0);
    for (arma::uword i = 0; i < rows; ++i) acc += std::conj(a[i]) * c[i];
    return acc;
  };

  out->dp.set_size(n_streams, n_streams, n);
  out->dnq.set_size(n_streams, n);
  for (int j = 0; j < n; ++j) {
    const cx iw = imag_unit * w(j);
    const cx iwc = imag_unit * std::conj(w(j));
    const arma::uword off = static_cast<arma::uword>(j) * rows;
    for (int k = 0; k < n_streams; ++k) {
      const cx* xk = x.colptr(k);
      const cx* ek = e_all.colptr(k) + off;
      const cx* cjk = cj_all.colptr(k) + off;
      for (int m = 0; m < n_streams; ++m) {
        const cx* xm = x.colptr(m);
        const cx a1 = -iwc * dot(ek, xm);
        const cx a2 = iw * dot(xk, e_all.colptr(m) + off);
        const cx a3 = -iw * dot(xk, cj_all.colptr(m) + off);
        const cx a4 = iwc * std::conj(dot(xm, cjk));
        out->dp(k, m, j) = a1 + a2 + a3 + a4;
      }
      const cx* uk = u.colptr(k);
      const cx b1 = -iwc * dot(ek, uk);
      const cx b2 = iw * dot(xk, ctj_all.colptr(k) + off);
      const cx b3 = -iwc * std::conj(dot(uk, cjk));
      out->dnq(k, j) = 2.0 * std::real(b1) - 2.0 * std::real(b2 + b3);
    }
  }
  return true;
}

}  // namespace

bool direct_objective_grad(const DirectContext& ctx, const vec& phases,
                           vec* grad) {
  const int n = ctx.n_irs();
  grad->zeros(n);
  if (n == 0) return true;
  ProjDerivatives d;
  if (!proj_derivatives(ctx, unit_modulus(phases), &d)) return false;
  const double t2 = static_cast<double>(ctx.pilot_len()) * ctx.pilot_len();

  for (arma::uword i = 0; i < ctx.own.n_elem; ++i) {
    const arma::uword k = ctx.own(i);
    const double pkk = std::real(d.pm(k, k));
    const double num = pkk * pkk / ctx.powers(k);
    double den = t2 * ctx.noise_var_assumed * d.nq(k);
    for (arma::uword s = 0; s < d.pm.n_cols; ++s) {
      if (s == k) continue;
      den += std::norm(d.pm(k, s)) / ctx.powers(s);
    }
    den = std::max(den, kDenFloor);
    const double gamma = num / den;
    for (int j = 0; j < n; ++j) {
      const double dnum = 2.0 * pkk * std::real(d.dp(k, k, j)) / ctx.powers(k);
      double dden = t2 * ctx.noise_var_assumed * d.dnq(k, j);
      for (arma::uword s = 0; s < d.pm.n_cols; ++s) {
        if (s == k) continue;
        dden += 2.0 * std::real(std::conj(d.pm(k, s)) * d.dp(k, s, j)) /
                ctx.powers(s);
      }
      const double dgamma = (dnum * den - num * dden) / (den * den);
      (*grad)(j) += dgamma / ((1.0 + gamma) * kLn2);
    }
  }
  return true;
}

bool ls_objective_grad(const DirectContext& ctx, const vec& phases,
                       vec* grad) {
  const int n = ctx.n_irs();
  grad->zeros(n);
  if (n == 0) return true;
  ProjDerivatives d;
  if (!proj_derivatives(ctx, unit_modulus(phases), &d)) return false;

  for (arma::uword i = 0; i < ctx.own.n_elem; ++i) {
    const arma::uword k = ctx.own(i);
    const double energy = std::real(arma::cdot(ctx.pilots.col(k), ctx.pilots.col(k)));
    const double residual = std::max(energy - std::real(d.pm(k, k)), kResidualFloor);
    for (int j = 0; j < n; ++j) {
      (*grad)(j) += -std::real(d.dp(k, k, j)) / (residual * kLn2);
    }
  }
  return true;
}

cx_vec CsiContext::composite(int s, const cx_vec& w) const {
  if (s < 0 || s >= n_streams()) {
    throw StructuralError("CsiContext: stream index out of range");
  }
  if (static_cast<int>(w.n_elem) != n_irs()) {
    throw StructuralError("CsiContext: weight length does not match the cascades");
  }
  if (w.n_elem == 0) return direct_eff[s];
  return direct_eff[s] + cascade_eff[s] * w;
}

namespace {

struct CsiEval {
  std::vector<cx_vec> h;
  std::vector<cx_vec> v;   // MMSE filter per own stream, indexed like `own`
  vec sinr;                // per own stream
};

CsiEval csi_eval(const CsiContext& ctx, const cx_vec& w) {
  CsiEval ev;
  const int n_streams = ctx.n_streams();
  ev.h.resize(n_streams);
  for (int s = 0; s < n_streams; ++s) ev.h[s] = ctx.composite(s, w);

  const arma::uword m = ev.h.empty() ? 0 : ev.h[0].n_elem;
  cx_mat cov(m, m, arma::fill::eye);
  cov *= ctx.noise_var;
  for (int s = 0; s < n_streams; ++s) {
    cov += ctx.powers(s) * (ev.h[s] * ev.h[s].t());
  }
  cx_mat chol_r;
  const bool chol_ok = arma::chol(chol_r, cov);

  ev.v.resize(ctx.own.n_elem);
  ev.sinr.set_size(ctx.own.n_elem);
  for (arma::uword i = 0; i < ctx.own.n_elem; ++i) {
    const int k = static_cast<int>(ctx.own(i));
    cx_vec v;
    if (chol_ok) {
      v = arma::solve(arma::trimatu(chol_r),
                      arma::solve(arma::trimatl(chol_r.t()), ev.h[k]));
    } else {
      v = arma::pinv(cov) * ev.h[k];
    }
    v *= ctx.powers(k);
    ev.v[i] = v;
    ev.sinr(i) = true_sinr(ev.h, v, k, ctx.powers, ctx.noise_var);
  }
  return ev;
}

}  // namespace

double csi_objective(const CsiContext& ctx, const cx_vec& w) {
  return sum_rate(csi_eval(ctx, w).sinr);
}

vec csi_objective_grad(const CsiContext& ctx, const vec& phases) {
  const int n = ctx.n_irs();
  vec grad(n, arma::fill::zeros);
  if (n == 0) return grad;
  const cx_vec w = unit_modulus(phases);
  const CsiEval ev = csi_eval(ctx, w);
  const int n_streams = ctx.n_streams();

  // The MMSE filter is a stationary point of each SINR_k, so v can be held
  // fixed while differentiating through the composites.
  for (arma::uword i = 0; i < ctx.own.n_elem; ++i) {
    const int k = static_cast<int>(ctx.own(i));
    const cx_vec& v = ev.v[i];
    std::vector<cx> z(n_streams);
    std::vector<arma::cx_rowvec> r(n_streams);
    for (int s = 0; s < n_streams; ++s) {
      z[s] = arma::cdot(v, ev.h[s]);
      r[s] = v.t() * ctx.cascade_eff[s];
    }
    const double num = ctx.powers(k) * std::norm(z[k]);
    double den = ctx.noise_var * std::real(arma::cdot(v, v));
    for (int s = 0; s < n_streams; ++s) {
      if (s == k) continue;
      den += ctx.powers(s) * std::norm(z[s]);
    }
    den = std::max(den, kDenFloor);
    const double sinr = num / den;
    for (int j = 0; j < n; ++j) {
      const cx iw = imag_unit * w(j);
      const double dnum =
          ctx.powers(k) * 2.0 * std::real(std::conj(z[k]) * (iw * r[k](j)));
      double dden = 0.0;
      for (int s = 0; s < n_streams; ++s) {
        if (s == k) continue;
        dden += ctx.powers(s) * 2.0 * std::real(std::conj(z[s]) * (iw * r[s](j)));
      }
      const double dsinr = (dnum * den - num * dden) / (den * den);
      grad(j) += dsinr / ((1.0 + sinr) * kLn2);
    }
  }
  return grad;
}

PhaseObjective direct_phase_objective(const DirectContext& ctx) {
  auto c = std::make_shared<DirectContext>(ctx);
  PhaseObjective obj;
  if (c->mode == ObjectiveMode::ls_residual) {
    obj.value = [c](const vec& ph) { return -ls_objective(*c, unit_modulus(ph)); };
    obj.grad = [c](const vec& ph, vec* g) {
      if (!ls_objective_grad(*c, ph, g)) return false;
      *g = -*g;
      return true;
    };
  } else {
    obj.value = [c](const vec& ph) { return direct_objective(*c, unit_modulus(ph)); };
    obj.grad = [c](const vec& ph, vec* g) { return direct_objective_grad(*c, ph, g); };
  }
  return obj;
}

PhaseObjective csi_phase_objective(const CsiContext& ctx) {
  auto c = std::make_shared<CsiContext>(ctx);
  PhaseObjective obj;
  obj.value = [c](const vec& ph) { return csi_objective(*c, unit_modulus(ph)); };
  obj.grad = [c](const vec& ph, vec* g) {
    *g = csi_objective_grad(*c, ph);
    return true;
  };
  return obj;
}

}  // namespace irsbench
