#include "ffapprox/dynamics.hpp"

#include <algorithm>
#include <set>

#include "ffapprox/errors.hpp"
#include "ffapprox/parallel.hpp"

namespace ffapprox {

namespace {

void check_shape(const LaurentMatrix& A, const WeightedNormContext& ctx) {
  ctx.validate();
  if (A.rows() != ctx.m() || A.cols() != ctx.n()) throw InputError("matrix shape does not match the weights");
}

// Degree of the lcm of the denominators in row i (and c); -1 when some entry
// is truncated.
std::int64_t exact_den_deg(const VecKv& row, const Laurent* c) {
  if (row.empty()) return 0;
  Poly D = Poly::one(row.front().field());
  auto absorb = [&](const Laurent& x) {
    if (!x.is_exact()) return false;
    const Poly& dj = x.backing()->den();
    D = divmod(D * dj, gcd(D, dj)).first;
    return true;
  };
  for (const auto& x : row)
    if (!absorb(x)) return -1;
  if (c && !absorb(*c)) return -1;
  return D.degree();
}

}  // namespace

Grid make_uA_lattice(const LaurentMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  Grid g{LaurentMatrix::identity(A.field(), m + n), {}};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) g.basis.at(i, m + j) = A.at(i, j);
  return g;
}

Grid make_target_grid(const LaurentMatrix& A, const VecKv& theta) {
  if (theta.size() != A.rows()) throw InputError("theta length does not match A");
  Grid g = make_uA_lattice(A);
  const FieldPtr& f = A.field();
  g.translation.assign(A.rows() + A.cols(), Laurent::zero(f));
  for (std::size_t i = 0; i < A.rows(); ++i) g.translation[i] = -theta[i];
  return g;
}

Grid apply_flow(const Grid& g, const WeightedNormContext& ctx, std::int64_t ell) {
  const std::vector<std::int64_t> w = ctx.combined();
  const std::size_t m = ctx.m(), d = ctx.d();
  if (g.basis.rows() != d) throw InputError("flow: grid dimension does not match the weights");
  Grid out = g;
  for (std::size_t k = 0; k < d; ++k) {
    const std::int64_t shift = k < m ? ell * w[k] : -ell * w[k];
    for (std::size_t c = 0; c < d; ++c) out.basis.at(k, c) = g.basis.at(k, c).times_Z_power(shift);
    if (!g.translation.empty()) out.translation[k] = g.translation[k].times_Z_power(shift);
  }
  return out;
}

bool in_X_gt_eps(const Grid& g, const WeightedNormContext& ctx, const Rational& eps_log) {
  if (!g.is_lattice()) throw InputError("in_X_gt_eps expects a lattice");
  return rs_systole(g.basis, ctx).value > LogVal(eps_log);
}

bool dani_arithmetic(const LaurentMatrix& A, const WeightedNormContext& ctx, const Rational& eps_log,
                     std::int64_t ell) {
  check_shape(A, ctx);
  const Rational below = eps_log - ell, above = eps_log + ell;
  if (below >= 0) return true;  // p = 1, y = 0
  std::vector<std::int64_t> bounds;
  bool any = false;
  for (auto sj : ctx.s) {
    bounds.push_back(std::max<std::int64_t>(-1, floor_q(above * sj)));
    any = any || bounds.back() >= 0;
  }
  if (!any) return false;
  CoefficientSystem sys(A.field(), PolyUnknowns(bounds));
  for (std::size_t i = 0; i < A.rows(); ++i) {
    VecKv row = A.row(i);
    sys.require_vanishing(row, nullptr, floor_q(below * ctx.r[i]) + 1, -1);
  }
  return lex_min_nonzero(*A.field(), sys.solve()).has_value();
}

Trajectory dani_trajectory(const LaurentMatrix& A, const WeightedNormContext& ctx, const Rational& eps_log,
                           std::int64_t N, std::size_t workers) {
  check_shape(A, ctx);
  if (N < 1) throw InputError("trajectory length must be positive");
  Trajectory t;
  t.rows.resize(static_cast<std::size_t>(N));
  const Grid base = make_uA_lattice(A);
  parallel_for(t.rows.size(), workers, [&](std::size_t k) {
    const std::int64_t ell = static_cast<std::int64_t>(k) + 1;
    TrajectoryRow& row = t.rows[k];
    row.ell = ell;
    row.systole = rs_systole(apply_flow(base, ctx, ell).basis, ctx).value;
    row.in_X = row.systole > LogVal(eps_log);
    row.arithmetic = dani_arithmetic(A, ctx, eps_log, ell);
    row.consistent = row.in_X == !row.arithmetic;
  });
  std::int64_t outside = 0;
  for (const auto& r : t.rows) {
    if (!r.in_X) ++outside;
    if (!r.consistent) ++t.mismatches;
  }
  t.outside_fraction = Rational(outside, N);
  return t;
}

LMembership in_L_eps(const Grid& g, const WeightedNormContext& ctx, const Rational& eps_log) {
  const std::size_t m = ctx.m(), n = ctx.n(), d = ctx.d();
  if (g.basis.rows() != d) throw InputError("in_L_eps: grid dimension does not match the weights");
  std::vector<std::int64_t> e(d);
  for (std::size_t i = 0; i < m; ++i)
    e[i] = ceil_q(eps_log * Rational(ctx.r[i] * static_cast<std::int64_t>(m), static_cast<std::int64_t>(d))) - 1;
  for (std::size_t j = 0; j < n; ++j)
    e[m + j] =
        ceil_q(eps_log * Rational(ctx.s[j] * static_cast<std::int64_t>(n), static_cast<std::int64_t>(d))) - 1;
  ReducedBasis R = reduce_lattice(g.basis);
  LMembership out;
  out.witness = lex_min_in_box(R, e, g.is_lattice() ? nullptr : &g.translation);
  // For a lattice the zero vector always lies in the box.
  out.in_L = !out.witness.has_value() && !g.is_lattice();
  return out;
}

EventualReport eventually_in_L_eps(const LaurentMatrix& A, const VecKv& theta, const WeightedNormContext& ctx,
                                   const Rational& eps_log, std::int64_t T, std::int64_t N,
                                   const Rational& alt_horizon) {
  check_shape(A, ctx);
  if (T > N) throw InputError("eventually_in_L_eps: need T <= N");
  EventualReport rep;
  rep.T = T;
  rep.N = N;
  const Grid base = make_target_grid(A, theta);
  for (std::int64_t ell = T; ell <= N; ++ell) {
    if (!in_L_eps(apply_flow(base, ctx, ell), ctx, eps_log).in_L) {
      ++rep.failures;
      if (!rep.first_failure) rep.first_failure = ell;
    }
  }

  // theta = A y + p with ||y||_s <= alt_horizon.
  std::vector<std::int64_t> bounds;
  for (auto sj : ctx.s) bounds.push_back(std::max<std::int64_t>(-1, floor_q(alt_horizon * sj)));
  CoefficientSystem sys(A.field(), PolyUnknowns(bounds));
  bool apparent = false;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    VecKv row = A.row(i);
    const Laurent c = -theta[i];
    std::int64_t deg_den = exact_den_deg(row, &c);
    std::int64_t t_lo;
    if (deg_den >= 0) {
      t_lo = -deg_den;
    } else {
      // Only as far as the known coefficients reach.
      apparent = true;
      std::int64_t reach = c.known_bound() - 1;
      for (std::size_t j = 0; j < row.size(); ++j)
        if (bounds[j] >= 0) reach = std::min(reach, row[j].known_bound() - bounds[j] - 1);
      t_lo = -reach;
    }
    if (t_lo <= -1) sys.require_vanishing(row, &c, t_lo, -1);
  }
  if (auto y = lex_min_element(sys.solve())) {
    rep.alt = apparent ? Alternative::kApparent : Alternative::kExact;
    rep.alt_y = PolyUnknowns(bounds).decode(A.field(), *y);
  }
  rep.prop_holds = rep.alt != Alternative::kNone || !rep.first_failure;
  return rep;
}

EpsBadResult is_eps_bad(const LaurentMatrix& A, const VecKv& theta, const WeightedNormContext& ctx,
                        const Rational& eps_log, const Rational& horizon) {
  check_shape(A, ctx);
  if (theta.size() != A.rows()) throw InputError("theta length does not match A");
  std::set<Rational> levels;
  for (auto sj : ctx.s)
    for (std::int64_t a = 0; Rational(a, sj) <= horizon; ++a) levels.insert(Rational(a, sj));
  EpsBadResult out;
  const FieldPtr& f = A.field();
  for (const Rational& t : levels) {
    std::vector<std::int64_t> bounds;
    for (auto sj : ctx.s) bounds.push_back(floor_q(t * sj));
    PolyUnknowns vars(bounds);
    CoefficientSystem sys(f, vars);
    for (std::size_t i = 0; i < A.rows(); ++i) {
      // log|<A_i x - theta_i>| < r_i (eps - t)
      const std::int64_t t_lo = ceil_q((eps_log - t) * ctx.r[i]);
      if (t_lo > -1) continue;
      VecKv row = A.row(i);
      const Laurent c = -theta[i];
      sys.require_vanishing(row, &c, t_lo, -1);
    }
    auto x = lex_min_nonzero(*f, sys.solve());
    if (!x) continue;
    PolyVec xv = vars.decode(f, *x);
    out.bad = false;
    out.witness_norm = poly_weighted_norm(xv, ctx.s);
    VecKv diff = A.apply(xv);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = diff[i] - theta[i];
    out.witness_dist = weighted_dist(diff, ctx.r);
    out.witness = std::move(xv);
    return out;
  }
  return out;
}

}  // namespace ffapprox
