#include "ffapprox/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ffapprox/errors.hpp"

namespace ffapprox {

LaurentMatrix::LaurentMatrix(FieldPtr f, std::size_t rows, std::size_t cols)
    : f_(f), rows_(rows), cols_(cols), a_(rows * cols, Laurent::zero(f)) {}

LaurentMatrix LaurentMatrix::identity(FieldPtr f, std::size_t d) {
  LaurentMatrix m(f, d, d);
  for (std::size_t i = 0; i < d; ++i) m.at(i, i) = Laurent::constant(f, f->one());
  return m;
}

VecKv LaurentMatrix::row(std::size_t i) const {
  return VecKv(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

VecKv LaurentMatrix::column(std::size_t j) const {
  VecKv c;
  for (std::size_t i = 0; i < rows_; ++i) c.push_back(at(i, j));
  return c;
}

LaurentMatrix LaurentMatrix::transposed() const {
  LaurentMatrix t(f_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

bool LaurentMatrix::all_exact() const {
  return std::all_of(a_.begin(), a_.end(), [](const Laurent& x) { return x.is_exact(); });
}

VecKv LaurentMatrix::apply(const PolyVec& v) const {
  VecKv out;
  for (std::size_t i = 0; i < rows_; ++i) {
    Laurent acc = Laurent::zero(f_);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (v[j].is_zero() || at(i, j).is_exact_zero()) continue;
      acc = acc + at(i, j) * Laurent::from_poly(v[j]);
    }
    out.push_back(acc);
  }
  return out;
}

WeightedNormContext::WeightedNormContext(std::vector<std::int64_t> r_, std::vector<std::int64_t> s_)
    : r(std::move(r_)), s(std::move(s_)) {}

WeightedNormContext WeightedNormContext::standard(std::size_t m, std::size_t n) {
  return WeightedNormContext(std::vector<std::int64_t>(m, static_cast<std::int64_t>(n)),
                             std::vector<std::int64_t>(n, static_cast<std::int64_t>(m)));
}

std::int64_t WeightedNormContext::sum_r() const { return std::accumulate(r.begin(), r.end(), std::int64_t{0}); }
std::int64_t WeightedNormContext::sum_s() const { return std::accumulate(s.begin(), s.end(), std::int64_t{0}); }
std::int64_t WeightedNormContext::min_r() const { return *std::min_element(r.begin(), r.end()); }
std::int64_t WeightedNormContext::min_s() const { return *std::min_element(s.begin(), s.end()); }
std::int64_t WeightedNormContext::max_r() const { return *std::max_element(r.begin(), r.end()); }
std::int64_t WeightedNormContext::max_s() const { return *std::max_element(s.begin(), s.end()); }
std::int64_t WeightedNormContext::lcm_r() const {
  std::int64_t l = 1;
  for (auto x : r) l = std::lcm(l, x);
  return l;
}
std::int64_t WeightedNormContext::lcm_s() const {
  std::int64_t l = 1;
  for (auto x : s) l = std::lcm(l, x);
  return l;
}
std::vector<std::int64_t> WeightedNormContext::combined() const {
  std::vector<std::int64_t> w = r;
  w.insert(w.end(), s.begin(), s.end());
  return w;
}

void WeightedNormContext::validate() const {
  if (r.empty() || s.empty()) throw InputError("weights: m and n must be >= 1");
  for (auto x : r)
    if (x <= 0) throw InputError("weights: r must be positive");
  for (auto x : s)
    if (x <= 0) throw InputError("weights: s must be positive");
  if (sum_r() != sum_s()) throw InputError("weights: |r| must equal |s|");
}

LogVal weighted_norm(std::span<const Laurent> v, std::span<const std::int64_t> w) {
  LogVal out = LogVal::neg_inf();
  for (std::size_t k = 0; k < v.size(); ++k) out = max(out, v[k].abs().scaled(Rational(1, w[k])));
  return out;
}

LogVal weighted_dist(std::span<const Laurent> v, std::span<const std::int64_t> w) {
  LogVal out = LogVal::neg_inf();
  for (std::size_t k = 0; k < v.size(); ++k) out = max(out, v[k].dist_to_Rv().scaled(Rational(1, w[k])));
  return out;
}

LogVal sup_norm(std::span<const Laurent> v) {
  LogVal out = LogVal::neg_inf();
  for (const auto& x : v) out = max(out, x.abs());
  return out;
}

LogVal poly_weighted_norm(const PolyVec& v, std::span<const std::int64_t> w) {
  LogVal out = LogVal::neg_inf();
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) out = max(out, LogVal(Rational(v[k].degree(), w[k])));
  return out;
}

VecKv to_kv(const PolyVec& v) {
  VecKv out;
  for (const auto& p : v) out.push_back(Laurent::from_poly(p));
  return out;
}

bool is_zero(const PolyVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

VecKv mat_vec(const LaurentMatrix& A, const PolyVec& y) { return A.apply(y); }

VecKv mat_vec_transposed(const LaurentMatrix& A, const PolyVec& x) { return A.transposed().apply(x); }

namespace {

Laurent det_exact(const LaurentMatrix& B) {
  const std::size_t d = B.rows();
  const FieldPtr& f = B.field();
  std::vector<std::vector<RatFunc>> a(d, std::vector<RatFunc>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a[i][j] = *B.at(i, j).backing();
  RatFunc det(Poly::one(f));
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    while (p < d && a[p][c].is_zero()) ++p;
    if (p == d) return Laurent::zero(f);
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det = det * a[c][c];
    const RatFunc inv = a[c][c].inverse();
    for (std::size_t i = c + 1; i < d; ++i) {
      if (a[i][c].is_zero()) continue;
      const RatFunc factor = a[i][c] * inv;
      for (std::size_t k = c; k < d; ++k) a[i][k] = a[i][k] - factor * a[c][k];
    }
  }
  return Laurent::exact(det);
}

Laurent det_series(const LaurentMatrix& B) {
  const std::size_t d = B.rows();
  const FieldPtr& f = B.field();
  std::vector<std::vector<Laurent>> a(d, std::vector<Laurent>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a[i][j] = B.at(i, j);
  Laurent det = Laurent::constant(f, f->one());
  for (std::size_t c = 0; c < d; ++c) {
    // Pivot of largest absolute value; undecided entries are bounded by
    // q^{-lower bound} and must be strictly smaller.
    std::size_t best = d;
    std::int64_t best_val = 0;
    std::int64_t undecided_min = Laurent::kUnbounded;
    for (std::size_t i = c; i < d; ++i) {
      const Laurent& x = a[i][c];
      if (x.is_exact_zero()) continue;
      if (x.has_valuation()) {
        if (best == d || x.valuation() < best_val) {
          best = i;
          best_val = x.valuation();
        }
      } else {
        undecided_min = std::min(undecided_min, x.val_lower_bound());
      }
    }
    if (best == d) {
      if (undecided_min == Laurent::kUnbounded) return Laurent::zero(f);
      throw PrecisionExhausted("precision exhausted: determinant pivot undecidable");
    }
    if (undecided_min <= best_val) throw PrecisionExhausted("precision exhausted: determinant pivot undecidable");
    if (best != c) {
      std::swap(a[best], a[c]);
      det = -det;
    }
    det = det * a[c][c];
    const Laurent inv = a[c][c].inverse();
    for (std::size_t i = c + 1; i < d; ++i) {
      if (a[i][c].is_exact_zero()) continue;
      const Laurent factor = a[i][c] * inv;
      for (std::size_t k = c + 1; k < d; ++k) a[i][k] = a[i][k] - factor * a[c][k];
      a[i][c] = Laurent::zero(f);
    }
  }
  return det;
}

}  // namespace

Laurent determinant(const LaurentMatrix& B) {
  if (B.rows() != B.cols()) throw InputError("determinant of a non-square matrix");
  return B.all_exact() ? det_exact(B) : det_series(B);
}

LogVal covol_Rv_log(std::size_t d, const CurveParams& cp) {
  return LogVal(Rational((cp.genus - 1) * static_cast<std::int64_t>(d)));
}

LogVal covol(const LaurentMatrix& B) {
  Laurent det = determinant(B);
  if (det.is_exact_zero()) throw PreconditionError("singular basis");
  return det.abs() + covol_Rv_log(B.rows());
}

std::optional<LatticeVector> lex_min_in_box(const ReducedBasis& R, std::span<const std::int64_t> zdeg_max,
                                            const VecKv* translation) {
  const LaurentMatrix& B = R.basis;
  const std::size_t d = B.rows();
  const FieldPtr& f = B.field();
  std::int64_t E = *std::max_element(zdeg_max.begin(), zdeg_max.end());
  if (translation)
    for (const auto& u : *translation) E = std::max(E, zdeg_upper(u));
  // Reduced coordinates satisfy deg w'_j <= E - col_deg_j.
  std::vector<std::int64_t> bounds(d, -1);
  for (std::size_t j = 0; j < d; ++j) {
    const std::int64_t Dj = E - R.col_deg[j];
    if (Dj < 0) continue;
    for (std::size_t i = 0; i < d; ++i)
      if (!R.transform[j][i].is_zero())
        bounds[i] = std::max(bounds[i], R.transform[j][i].degree() + Dj);
  }
  PolyUnknowns vars(bounds);
  CoefficientSystem sys(f, vars);
  for (std::size_t i = 0; i < d; ++i) {
    VecKv row = B.row(i);
    std::int64_t top = -Laurent::kUnbounded;
    for (std::size_t j = 0; j < d; ++j)
      if (bounds[j] >= 0 && !row[j].is_exact_zero()) top = std::max(top, zdeg_upper(row[j]) + bounds[j]);
    const Laurent* c = translation ? &(*translation)[i] : nullptr;
    if (c) top = std::max(top, zdeg_upper(*c));
    sys.require_vanishing(row, c, zdeg_max[i] + 1, top);
  }
  AffineSpace sol = sys.solve();
  std::optional<FqVec> w = translation ? lex_min_element(sol) : lex_min_nonzero(*f, sol);
  if (!w) return std::nullopt;
  LatticeVector out;
  out.coords = vars.decode(f, *w);
  out.vec = B.apply(out.coords);
  if (translation)
    for (std::size_t i = 0; i < d; ++i) out.vec[i] = out.vec[i] + (*translation)[i];
  return out;
}

SystoleResult rs_systole(const LaurentMatrix& B, const WeightedNormContext& ctx) {
  return rs_systole(reduce_lattice(B), ctx);
}

SystoleResult rs_systole(const ReducedBasis& R, const WeightedNormContext& ctx) {
  const std::vector<std::int64_t> w = ctx.combined();
  if (w.size() != R.basis.rows()) throw InputError("systole: dimension does not match weights");
  const std::int64_t lam = *std::min_element(R.col_deg.begin(), R.col_deg.end());
  const std::int64_t wmin = *std::min_element(w.begin(), w.end());
  const std::int64_t wmax = *std::max_element(w.begin(), w.end());
  const Rational lo = lam >= 0 ? Rational(lam, wmax) : Rational(lam, wmin);
  const Rational hi = lam >= 0 ? Rational(lam, wmin) : Rational(lam, wmax);
  std::set<Rational> cand;
  for (auto wk : w)
    for (std::int64_t a = ceil_q(lo * wk); a <= floor_q(hi * wk); ++a) cand.insert(Rational(a, wk));
  std::vector<Rational> ts(cand.begin(), cand.end());
  auto probe = [&](const Rational& t) {
    std::vector<std::int64_t> e;
    for (auto wk : w) e.push_back(floor_q(t * wk));
    return lex_min_in_box(R, e);
  };
  std::size_t a = 0, b = ts.size() - 1;  // ts[b] is feasible
  std::optional<LatticeVector> best = probe(ts[b]);
  if (!best) throw std::logic_error("systole: upper bound infeasible");
  while (a < b) {
    std::size_t mid = (a + b) / 2;
    auto v = probe(ts[mid]);
    if (v) {
      b = mid;
      best = std::move(v);
    } else {
      a = mid + 1;
    }
  }
  return SystoleResult{LogVal(ts[b]), *best};
}

PolyVec dirichlet_solve(const LaurentMatrix& A, std::span<const std::int64_t> rprime,
                        std::span<const std::int64_t> sprime) {
  const std::size_t m = A.rows(), n = A.cols();
  if (rprime.size() != m || sprime.size() != n) throw InputError("dirichlet: weight lengths do not match A");
  std::int64_t sr = 0, ss = 0;
  for (auto x : rprime) {
    if (x < 1) throw PreconditionError("dirichlet: r' must be >= 1");
    sr += x;
  }
  for (auto x : sprime) {
    if (x < 0) throw PreconditionError("dirichlet: s' must be >= 0");
    ss += x;
  }
  if (sr != ss) throw PreconditionError("dirichlet: sum r' must equal sum s'");
  const FieldPtr& f = A.field();
  LaurentMatrix M(f, m + n, m + n);
  for (std::size_t i = 0; i < m; ++i) {
    M.at(i, i) = Laurent::monomial(f, f->one(), rprime[i]);
    for (std::size_t j = 0; j < n; ++j) M.at(i, m + j) = A.at(i, j).times_Z_power(rprime[i]);
  }
  for (std::size_t j = 0; j < n; ++j) M.at(m + j, m + j) = Laurent::monomial(f, f->one(), -sprime[j]);
  ReducedBasis R = reduce_lattice(M);
  const std::int64_t lam = *std::min_element(R.col_deg.begin(), R.col_deg.end());
  std::vector<std::int64_t> e(m + n, lam);
  auto v = lex_min_in_box(R, e);
  if (!v) throw std::logic_error("dirichlet: first minimum not realized");
  PolyVec y(v->coords.begin() + static_cast<std::ptrdiff_t>(m), v->coords.end());
  // Postcondition, evaluated independently.
  VecKv Ay = A.apply(y);
  for (std::size_t i = 0; i < m; ++i)
    if (Ay[i].dist_to_Rv() > LogVal(-rprime[i])) throw std::logic_error("dirichlet: postcondition failed");
  for (std::size_t j = 0; j < n; ++j)
    if (!y[j].is_zero() && y[j].degree() > sprime[j]) throw std::logic_error("dirichlet: postcondition failed");
  if (is_zero(y)) throw std::logic_error("dirichlet: zero solution");
  return y;
}

PolyVec dirichlet_weighted(const LaurentMatrix& A, std::int64_t alpha, const WeightedNormContext& ctx) {
  ctx.validate();
  const CurveParams cp;
  // alpha > (1/min r)(1 + (g-1)/deg v)
  const Rational thr = Rational(1, ctx.min_r()) * (Rational(1) + Rational(cp.genus - 1, cp.deg_v));
  if (!(Rational(alpha) > thr)) throw PreconditionError("dirichlet: alpha too small");
  std::vector<std::int64_t> rp, sp;
  for (auto x : ctx.r) rp.push_back(alpha * x);
  for (auto x : ctx.s) sp.push_back(alpha * x);
  return dirichlet_solve(A, rp, sp);
}

bool dirichlet_check(const LaurentMatrix& A, const PolyVec& y, std::int64_t alpha, const WeightedNormContext& ctx) {
  if (is_zero(y)) return false;
  VecKv Ay = A.apply(y);
  return rdist(Ay, ctx) <= LogVal(-alpha) && snorm(to_kv(y), ctx) <= LogVal(alpha);
}

std::vector<std::int64_t> pseudocompound(std::span<const std::int64_t> alpha) {
  const std::int64_t total = std::accumulate(alpha.begin(), alpha.end(), std::int64_t{0});
  std::vector<std::int64_t> out;
  for (auto a : alpha) out.push_back(total - a);
  return out;
}

Rational beta_d(std::size_t d, const CurveParams& cp) {
  if (d < 2) throw InputError("beta_d needs d >= 2");
  const std::int64_t D = static_cast<std::int64_t>(d);
  Rational x = Rational(1, D - 1) * (Rational(D + 1) + Rational((cp.genus - 1) * D, cp.deg_v));
  return Rational(ceil_q(x));
}

KappaConstants kappa_constants(const WeightedNormContext& ctx, const CurveParams& cp) {
  ctx.validate();
  KappaConstants k;
  k.beta = beta_d(ctx.d(), cp);
  const Rational S(ctx.sum_s());
  const Rational mr(ctx.min_r()), ms(ctx.min_s());
  const Rational den = S * (Rational(1) / mr + Rational(1) / ms) - 1;
  k.kappa3 = k.beta / mr + 1;
  k.kappa4 = (S / ms - 1) / den;
  k.kappa2 = Rational(1) / den;
  k.kappa1 = k.beta / ms + (S / ms) * (k.kappa2 + 1) + k.kappa3;
  return k;
}

Rational best_approx_product_bound(const WeightedNormContext& ctx, const CurveParams& cp) {
  return Rational(cp.deg_v + cp.genus - 1) * (Rational(1, ctx.min_r()) + Rational(1, ctx.min_s())) +
         Rational(2 * cp.deg_v);
}

}  // namespace ffapprox
