#include <algorithm>
#include <stdexcept>

#include "ffapprox/errors.hpp"
#include "ffapprox/geometry.hpp"

namespace ffapprox {

TransferResult transfer(const LaurentMatrix& A, const PolyVec& y, std::int64_t eps_log, std::int64_t Y_log,
                        const WeightedNormContext& ctx) {
  ctx.validate();
  const std::size_t m = ctx.m(), n = ctx.n(), d = m + n;
  if (A.rows() != m || A.cols() != n || y.size() != n) throw InputError("transfer: dimensions do not match weights");
  if (eps_log > -1) throw PreconditionError("transfer: eps must be a power q^k with k <= -1");
  if (Y_log < 1) throw PreconditionError("transfer: Y must be a power q^k with k >= 1");
  if (is_zero(y)) throw PreconditionError("transfer: y must be nonzero");
  const VecKv Ay = A.apply(y);
  if (rdist(Ay, ctx) > LogVal(eps_log - Y_log) || poly_weighted_norm(y, ctx.s) > LogVal(Y_log))
    throw PreconditionError("transfer: y does not satisfy <Ay>_r <= eps/Y, ||y||_s <= Y");

  const FieldPtr& f = A.field();
  const KappaConstants K = kappa_constants(ctx);
  const std::int64_t beta = K.beta.numerator();
  const Rational S(ctx.sum_s());
  const Rational den = S * (Rational(1, ctx.min_r()) + Rational(1, ctx.min_s())) - 1;
  const std::int64_t a_eps = -eps_log, a_Y = Y_log;
  const std::int64_t a_delta = floor_q(Rational(a_eps - 1) / den);
  const std::int64_t a_Z = ceil_q((S / ctx.min_s() - 1) * a_delta);

  std::vector<std::int64_t> alpha(d);
  for (std::size_t i = 0; i < m; ++i) alpha[i] = ctx.r[i] * (a_Z + a_Y);
  for (std::size_t j = 0; j < n; ++j) alpha[m + j] = -ctx.s[j] * (a_delta + a_Z + a_Y);
  const std::vector<std::int64_t> star = pseudocompound(alpha);

  // z = (frac(Ay), y) lies in the dual lattice u_A R^d and in the pseudocompound.
  VecKv z;
  PolyVec xpp;  // -polynomial part of A y
  for (std::size_t i = 0; i < m; ++i) {
    z.push_back(Ay[i].frac());
    xpp.push_back(-Ay[i].poly_part());
  }
  for (std::size_t j = 0; j < n; ++j) z.push_back(Laurent::from_poly(y[j]));
  std::int64_t kappa0 = Laurent::kUnbounded;
  std::size_t k1 = d;
  for (std::size_t l = 0; l < d; ++l) {
    LogVal a = z[l].abs();
    if (a.is_neg_inf()) continue;
    const std::int64_t slack = star[l] - a.value().numerator();
    if (slack < kappa0) {
      kappa0 = slack;
      k1 = l;
    }
  }
  if (k1 == d) throw std::logic_error("transfer: z vanished");
  if (kappa0 < 0) throw std::logic_error("transfer: z outside the pseudocompound");

  // Rows of F = [[I, 0], [-tA, I]].
  auto F_entry = [&](std::size_t k, std::size_t l) -> Laurent {
    if (k < m) return k == l ? Laurent::constant(f, f->one()) : Laurent::zero(f);
    const std::size_t j = k - m;
    if (l < m) return -A.at(l, j);
    return l - m == j ? Laurent::constant(f, f->one()) : Laurent::zero(f);
  };
  LaurentMatrix M(f, d, d);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = 0; l < d; ++l) {
      if (k == k1) {
        const Poly& p = l < m ? xpp[l] : y[l - m];
        M.at(k, l) = Laurent::from_poly(p).times_Z_power(1);
      } else {
        M.at(k, l) = F_entry(k, l).times_Z_power(-(beta + alpha[k]));
      }
    }
  }
  ReducedBasis R = reduce_lattice(M);
  const std::int64_t lam = *std::min_element(R.col_deg.begin(), R.col_deg.end());
  std::vector<std::int64_t> e(d, lam);
  auto w = lex_min_in_box(R, e);
  if (!w) throw std::logic_error("transfer: first minimum not realized");

  TransferResult out;
  out.x.assign(w->coords.begin(), w->coords.begin() + static_cast<std::ptrdiff_t>(m));
  if (is_zero(out.x)) throw PreconditionError("transfer: Y too small (constructed x vanishes)");
  out.x_rnorm = poly_weighted_norm(out.x, ctx.r);
  out.tAx_sdist = sdist(mat_vec_transposed(A, out.x), ctx);
  out.X_log = K.kappa3 - K.kappa4 * Rational(eps_log) + Rational(Y_log);
  out.bound_log = K.kappa1 + K.kappa2 * Rational(eps_log) - out.X_log;
  out.ok = out.x_rnorm <= LogVal(out.X_log) && out.tAx_sdist <= LogVal(out.bound_log);
  return out;
}

}  // namespace ffapprox
