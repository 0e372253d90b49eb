#include "ffapprox/bestapprox.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ffapprox/errors.hpp"

namespace ffapprox {

namespace {

// Smallest a in [lo, hi] with pred(a), for pred monotone and pred(hi) true.
// Gallops down from hi. `at_floor` is invoked when pred(lo) holds.
std::int64_t gallop_down(std::int64_t lo, std::int64_t hi, const std::function<bool(std::int64_t)>& pred,
                         const std::function<void()>& at_floor) {
  std::int64_t good = hi, bad;
  std::int64_t step = 1;
  for (;;) {
    std::int64_t cand = good - step;
    if (cand <= lo) {
      if (pred(lo)) {
        at_floor();
        return lo;
      }
      bad = lo;
      break;
    }
    if (pred(cand)) {
      good = cand;
      step *= 2;
    } else {
      bad = cand;
      break;
    }
  }
  while (good - bad > 1) {
    std::int64_t mid = bad + (good - bad) / 2;
    if (pred(mid)) good = mid;
    else bad = mid;
  }
  return good;
}

// Smallest index in [lo, hi] with pred, gallops up from lo; hi+1 if none.
std::size_t gallop_up(std::size_t lo, std::size_t hi, const std::function<bool(std::size_t)>& pred) {
  if (lo > hi) return hi + 1;
  std::size_t bad = lo, good;  // bad: last index known false (lo-1 conceptually)
  if (pred(lo)) return lo;
  std::size_t step = 1;
  for (;;) {
    std::size_t cand = bad + step;
    if (cand >= hi) {
      if (!pred(hi)) return hi + 1;
      good = hi;
      break;
    }
    if (pred(cand)) {
      good = cand;
      break;
    }
    bad = cand;
    step *= 2;
  }
  while (good - bad > 1) {
    std::size_t mid = bad + (good - bad) / 2;
    if (pred(mid)) good = mid;
    else bad = mid;
  }
  return good;
}

class DistProber {
 public:
  DistProber(const LaurentMatrix& A, const WeightedNormContext& ctx) : A_(A), ctx_(ctx) {
    L_ = ctx.lcm_r();
  }

  // Per-row degree of the common denominator over the columns the box
  // allows; nullopt when one of those entries is truncated.
  std::optional<std::vector<std::int64_t>> exact_den_degs(const std::vector<std::int64_t>& bounds) const {
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < A_.rows(); ++i) {
      Poly D = Poly::one(A_.field());
      for (std::size_t j = 0; j < A_.cols(); ++j) {
        if (bounds[j] < 0) continue;
        const Laurent& x = A_.at(i, j);
        if (!x.is_exact()) return std::nullopt;
        const Poly& dj = x.backing()->den();
        D = divmod(D * dj, gcd(D, dj)).first;
      }
      out.push_back(D.degree());
    }
    return out;
  }

  // Solution space of {y : deg y_j <= bounds_j, <A_i y> has log <= e_i}
  // with e_i = floor(r_i mu); mu = NEG_INF means every frac vanishes.
  AffineSpace space(const std::vector<std::int64_t>& bounds, const LogVal& mu) const {
    PolyUnknowns vars(bounds);
    CoefficientSystem sys(A_.field(), vars);
    std::optional<std::vector<std::int64_t>> degs;
    if (mu.is_neg_inf()) {
      degs = exact_den_degs(bounds);
      if (!degs) throw std::logic_error("exact-zero test on a truncated row");
    }
    for (std::size_t i = 0; i < A_.rows(); ++i) {
      const std::int64_t t_lo = degs ? -(*degs)[i] : floor_q(mu.value() * ctx_.r[i]) + 1;
      VecKv row = A_.row(i);
      sys.require_vanishing(row, nullptr, t_lo, -1);
    }
    return sys.solve();
  }

  std::optional<PolyVec> nonzero(const std::vector<std::int64_t>& bounds, const LogVal& mu) const {
    auto s = space(bounds, mu);
    auto v = lex_min_nonzero(*A_.field(), s);
    if (!v) return std::nullopt;
    return PolyUnknowns(bounds).decode(A_.field(), *v);
  }

  // Search floor, as a multiple of 1/L. Exact box: below it only the exact
  // zero case remains. Otherwise: the lowest value every truncated row can
  // still decide for these bounds.
  std::int64_t floor_index(const std::vector<std::int64_t>& bounds) const {
    if (auto degs = exact_den_degs(bounds)) {
      Rational lo(0);
      for (std::size_t i = 0; i < A_.rows(); ++i) lo = std::min(lo, Rational(-(*degs)[i] - 1, ctx_.r[i]));
      return floor_q(lo * L_);
    }
    Rational mu_min(-1, ctx_.max_r());
    bool have = false;
    for (std::size_t i = 0; i < A_.rows(); ++i) {
      bool any = false, truncated = false;
      std::int64_t e_min = 0;
      for (std::size_t j = 0; j < A_.cols(); ++j) {
        if (bounds[j] < 0 || A_.at(i, j).is_exact()) continue;
        truncated = true;
        const std::int64_t e = bounds[j] - A_.at(i, j).known_bound() + 1;
        e_min = any ? std::max(e_min, e) : e;
        any = true;
      }
      if (!truncated) continue;
      const Rational v(std::min<std::int64_t>(e_min, -1), ctx_.r[i]);
      mu_min = have ? std::max(mu_min, v) : v;
      have = true;
    }
    return ceil_q(mu_min * L_);
  }

  std::pair<LogVal, PolyVec> minimize(const std::vector<std::int64_t>& bounds, std::int64_t a_hi) const {
    const bool exact = exact_den_degs(bounds).has_value();
    if (exact) {
      if (auto v = nonzero(bounds, LogVal::neg_inf())) return {LogVal::neg_inf(), *v};
    }
    const std::int64_t lo = std::min(floor_index(bounds), a_hi);
    auto pred = [&](std::int64_t a) { return nonzero(bounds, LogVal(Rational(a, L_))).has_value(); };
    bool floor_hit = false;
    auto at_floor = [&]() { floor_hit = !exact; };
    std::int64_t a = gallop_down(lo, a_hi, pred, at_floor);
    if (floor_hit) {
      // A vector avoiding every truncated column may still vanish exactly.
      std::vector<std::int64_t> sub = bounds;
      for (std::size_t j = 0; j < A_.cols(); ++j)
        for (std::size_t i = 0; i < A_.rows(); ++i)
          if (!A_.at(i, j).is_exact()) sub[j] = -1;
      if (exact_den_degs(sub)) {
        if (auto v = nonzero(sub, LogVal::neg_inf())) return {LogVal::neg_inf(), *v};
      }
      throw PrecisionExhausted("precision exhausted: distance below trusted window");
    }
    auto v = nonzero(bounds, LogVal(Rational(a, L_)));
    return {LogVal(Rational(a, L_)), *v};
  }

  std::int64_t L() const { return L_; }

 private:
  const LaurentMatrix& A_;
  const WeightedNormContext& ctx_;
  std::int64_t L_;
};

std::vector<std::int64_t> level_bounds(const Rational& t, const WeightedNormContext& ctx) {
  std::vector<std::int64_t> b;
  for (auto s : ctx.s) b.push_back(floor_q(t * s));
  return b;
}

}  // namespace

std::pair<LogVal, PolyVec> min_dist_on_box(const LaurentMatrix& A, const WeightedNormContext& ctx,
                                           const std::vector<std::int64_t>& bounds) {
  DistProber P(A, ctx);
  return P.minimize(bounds, -P.L() / ctx.max_r());
}

BestApproxSeq enumerate_best_approx(const LaurentMatrix& A, const WeightedNormContext& ctx, const Rational& horizon) {
  ctx.validate();
  if (A.rows() != ctx.m() || A.cols() != ctx.n()) throw InputError("best approximation: A does not match weights");
  if (horizon < 0) throw PreconditionError("best approximation: horizon must be >= 0");
  BestApproxSeq seq;
  seq.ctx = ctx;
  seq.horizon = horizon;
  DistProber P(A, ctx);
  const std::int64_t L = P.L();

  std::set<Rational> lv;
  for (auto s : ctx.s)
    for (std::int64_t a = 0; Rational(a, s) <= horizon; ++a) lv.insert(Rational(a, s));
  const std::vector<Rational> levels(lv.begin(), lv.end());

  // Level 0.
  {
    auto [M, y] = P.minimize(level_bounds(0, ctx), -L / ctx.max_r());
    seq.steps.push_back({y, poly_weighted_norm(y, ctx.s), M});
    if (M.is_neg_inf()) {
      seq.terminated = true;
      return seq;
    }
  }
  std::size_t cur = 0;  // index into levels of the last step
  while (true) {
    const LogVal Mi = seq.steps.back().Mlog;
    // Strictly below Mi means at most the previous multiple of 1/L.
    const std::int64_t a_below = ceil_q(Mi.value() * L) - 1;
    const LogVal mu(Rational(a_below, L));
    auto pred = [&](std::size_t idx) { return P.nonzero(level_bounds(levels[idx], ctx), mu).has_value(); };
    const std::size_t next = gallop_up(cur + 1, levels.size() - 1, pred);
    if (next >= levels.size()) break;
    auto [M, y] = P.minimize(level_bounds(levels[next], ctx), a_below);
    seq.steps.push_back({y, poly_weighted_norm(y, ctx.s), M});
    cur = next;
    if (M.is_neg_inf()) {
      seq.terminated = true;
      break;
    }
  }
  return seq;
}

SeqReport verify_seq_bounds(const BestApproxSeq& seq) {
  SeqReport rep;
  rep.bound = best_approx_product_bound(seq.ctx);
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (seq.M(i).is_neg_inf()) break;
    const LogVal p = seq.M(i) + seq.Y(i + 1);
    rep.max_product = max(rep.max_product, p);
    if (p > LogVal(rep.bound)) {
      rep.ok = false;
      rep.violations.push_back("product bound fails at i=" + std::to_string(i) + ": " + p.str());
    }
  }
  return rep;
}

SeqReport verify_seq_laws(const BestApproxSeq& seq) {
  SeqReport rep = verify_seq_bounds(seq);
  const std::int64_t ls = seq.ctx.lcm_s(), lr = seq.ctx.lcm_r();
  for (std::size_t i = 1; i <= seq.size(); ++i) {
    const LogVal& Y = seq.Y(i);
    const LogVal& M = seq.M(i);
    auto fail = [&](const std::string& what) {
      rep.ok = false;
      rep.violations.push_back(what + " at i=" + std::to_string(i));
    };
    if (Y.is_neg_inf() || Y.value() < 0) fail("Ylog negative");
    else {
      if ((Y.value() * ls).denominator() != 1) fail("Ylog not in (1/lcm s)Z");
      if (Y.value() < Rational(static_cast<std::int64_t>(i) - 1, ls)) fail("Ylog below (i-1)/lcm s");
    }
    if (M.is_neg_inf()) {
      if (i != seq.size() || !seq.terminated) fail("NEG_INF before the terminal step");
    } else if ((M.value() * lr).denominator() != 1) {
      fail("Mlog not in (1/lcm r)Z");
    }
    if (i > 1) {
      if (!(seq.Y(i - 1) < Y)) fail("Ylog not strictly increasing");
      if (!(M < seq.M(i - 1))) fail("Mlog not strictly decreasing");
    }
  }
  return rep;
}

std::vector<StatisticRow> singular_statistic(const BestApproxSeq& seq, const Rational& eps_prime_log) {
  std::vector<StatisticRow> out;
  const std::size_t L = seq.size();
  std::int64_t count = 0;
  for (std::size_t k = 1; k + 1 <= L; ++k) {
    if (seq.M(k).is_neg_inf()) break;
    if (seq.M(k) + seq.Y(k + 1) > LogVal(eps_prime_log)) ++count;
    if (k >= 2 && seq.Y(k).value() > 0) out.push_back({k, Rational(count) / seq.Y(k).value(), false});
  }
  if (seq.terminated && L >= 2) out.push_back({L, Rational(0), true});
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kSingularCertified: return "SINGULAR_CERTIFIED";
    case Verdict::kTrendSingular: return "TREND_SINGULAR";
    case Verdict::kTrendNonsingular: return "TREND_NONSINGULAR";
  }
  return "?";
}

Classification classify_singular(const LaurentMatrix& A, const WeightedNormContext& ctx, const Rational& horizon,
                                 const Rational& eps_prime_log, const Rational& threshold) {
  Classification c{Verdict::kTrendNonsingular, enumerate_best_approx(A, ctx, horizon), eps_prime_log, {}, threshold};
  c.statistic = singular_statistic(c.seq, eps_prime_log);
  if (c.seq.terminated) {
    c.verdict = Verdict::kSingularCertified;
  } else if (!c.statistic.empty() && c.statistic.back().fraction <= threshold) {
    c.verdict = Verdict::kTrendSingular;
  }
  return c;
}

}  // namespace ffapprox
