#include "ffapprox/oracles.hpp"

#include <algorithm>
#include <map>

#include "ffapprox/errors.hpp"

namespace ffapprox::oracle {

bool for_each_polyvec(const FieldPtr& f, const std::vector<std::int64_t>& bounds, std::uint64_t cap,
                      const std::function<void(const PolyVec&)>& fn) {
  const std::uint32_t q = f->q();
  std::size_t slots = 0;
  for (auto b : bounds) slots += static_cast<std::size_t>(std::max<std::int64_t>(b + 1, 0));
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < slots; ++i) {
    total *= q;
    if (total > cap) return false;
  }
  std::vector<std::uint32_t> digit(slots, 0);
  for (std::uint64_t it = 0; it < total; ++it) {
    PolyVec v;
    std::size_t pos = 0;
    for (auto b : bounds) {
      std::vector<Fq> c;
      for (std::int64_t k = 0; k <= b; ++k) c.push_back(Fq{digit[pos++]});
      v.emplace_back(f, std::move(c));
    }
    fn(v);
    for (std::size_t i = 0; i < slots; ++i) {
      if (++digit[i] < q) break;
      digit[i] = 0;
    }
  }
  return true;
}

std::size_t rank_over_K(const FieldPtr& f, const std::vector<PolyVec>& vs) {
  if (vs.empty()) return 0;
  std::vector<std::vector<RatFunc>> a;
  for (const auto& v : vs) {
    std::vector<RatFunc> row;
    for (const auto& p : v) row.emplace_back(p);
    a.push_back(std::move(row));
  }
  const std::size_t cols = a[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c].is_zero()) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      if (a[i][c].is_zero()) continue;
      const RatFunc t = a[i][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] = a[i][k] - t * a[rank][k];
    }
    ++rank;
  }
  (void)f;
  return rank;
}

namespace {

// Coordinate degree bound for lattice vectors of sup norm <= T:
// w = B^{-1} v, so deg w_i <= max_k log|Binv_ik| + T.
std::vector<std::int64_t> coord_bounds(const LaurentMatrix& B, std::int64_t T) {
  const std::size_t d = B.rows();
  const FieldPtr& f = B.field();
  // Exact inverse by Gauss-Jordan over F_q(Z).
  std::vector<std::vector<RatFunc>> a(d, std::vector<RatFunc>(2 * d, RatFunc(Poly(f))));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (!B.at(i, j).is_exact()) throw InputError("oracle: basis must be exact");
      a[i][j] = *B.at(i, j).backing();
    }
    a[i][d + i] = RatFunc(Poly::one(f));
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && a[piv][c].is_zero()) ++piv;
    if (piv == d) throw PreconditionError("oracle: singular basis");
    std::swap(a[piv], a[c]);
    const RatFunc inv = a[c][c].inverse();
    for (auto& x : a[c]) x = x * inv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == c || a[i][c].is_zero()) continue;
      const RatFunc t = a[i][c];
      for (std::size_t k = 0; k < 2 * d; ++k) a[i][k] = a[i][k] - t * a[c][k];
    }
  }
  std::vector<std::int64_t> out(d, -1);
  for (std::size_t i = 0; i < d; ++i) {
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for (std::size_t k = 0; k < d; ++k)
      if (!a[i][d + k].is_zero()) best = std::max(best, -a[i][d + k].valuation());
    // floor: coordinates are polynomials
    out[i] = best == std::numeric_limits<std::int64_t>::min() ? -1 : std::max<std::int64_t>(-1, best + T);
  }
  return out;
}

std::int64_t column_sup_max(const LaurentMatrix& B) {
  std::int64_t T = std::numeric_limits<std::int64_t>::min();
  for (std::size_t j = 0; j < B.cols(); ++j) {
    LogVal c = sup_norm(B.column(j));
    if (c.is_finite()) T = std::max(T, floor_q(c.value()));
  }
  return T;
}

}  // namespace

std::vector<LogVal> minima(const LaurentMatrix& B, std::uint64_t cap) {
  const std::size_t d = B.rows();
  // The basis columns are d independent vectors, so lambda_d <= T.
  const std::int64_t T = column_sup_max(B);
  std::vector<std::pair<LogVal, PolyVec>> all;
  bool ok = for_each_polyvec(B.field(), coord_bounds(B, T), cap, [&](const PolyVec& w) {
    if (is_zero(w)) return;
    LogVal n = sup_norm(B.apply(w));
    if (n <= LogVal(T)) all.emplace_back(n, w);
  });
  if (!ok) return {};
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<LogVal> out;
  std::vector<PolyVec> chosen;
  for (const auto& [n, w] : all) {
    if (out.size() == d) break;
    chosen.push_back(w);
    if (rank_over_K(B.field(), chosen) == chosen.size()) out.push_back(n);
    else chosen.pop_back();
  }
  return out;
}

std::optional<LogVal> systole(const LaurentMatrix& B, const WeightedNormContext& ctx, std::uint64_t cap) {
  const std::vector<std::int64_t> w = ctx.combined();
  // Any basis column bounds the systole; sup norm <= wmax * (rs value).
  LogVal best = LogVal::neg_inf();
  bool have = false;
  for (std::size_t j = 0; j < B.cols(); ++j) {
    LogVal v = weighted_norm(B.column(j), w);
    if (!have || v < best) best = v;
    have = true;
  }
  const std::int64_t wmax = *std::max_element(w.begin(), w.end());
  const std::int64_t T = ceil_q(best.value() * (best.value() >= 0 ? wmax : *std::min_element(w.begin(), w.end())));
  bool ok = for_each_polyvec(B.field(), coord_bounds(B, T), cap, [&](const PolyVec& c) {
    if (is_zero(c)) return;
    LogVal v = weighted_norm(B.apply(c), w);
    if (v < best) best = v;
  });
  if (!ok) return std::nullopt;
  return best;
}

std::vector<std::pair<LogVal, LogVal>> best_approx_values(const LaurentMatrix& A, const WeightedNormContext& ctx,
                                                          const Rational& horizon, std::uint64_t cap) {
  std::vector<std::int64_t> bounds;
  for (auto sj : ctx.s) bounds.push_back(floor_q(horizon * sj));
  // min dist per norm level
  std::map<Rational, LogVal> level_min;
  bool ok = for_each_polyvec(A.field(), bounds, cap, [&](const PolyVec& y) {
    if (is_zero(y)) return;
    const Rational n = poly_weighted_norm(y, ctx.s).value();
    const LogVal dv = rdist(A.apply(y), ctx);
    auto it = level_min.find(n);
    if (it == level_min.end() || dv < it->second) level_min[n] = dv;
  });
  if (!ok) return {};
  std::vector<std::pair<LogVal, LogVal>> out;
  for (const auto& [n, dv] : level_min) {
    if (out.empty() || dv < out.back().second) out.emplace_back(LogVal(n), dv);
    if (out.back().second.is_neg_inf()) break;
  }
  return out;
}

LogVal min_dist_upto(const LaurentMatrix& A, const WeightedNormContext& ctx, const Rational& level,
                     std::uint64_t cap) {
  std::vector<std::int64_t> bounds;
  for (auto sj : ctx.s) bounds.push_back(floor_q(level * sj));
  LogVal best;
  bool have = false;
  if (!for_each_polyvec(A.field(), bounds, cap, [&](const PolyVec& y) {
        if (is_zero(y)) return;
        LogVal dv = rdist(A.apply(y), ctx);
        if (!have || dv < best) best = dv;
        have = true;
      }))
    throw BudgetExceeded("oracle: enumeration cap");
  if (!have) throw PreconditionError("oracle: no nonzero vector at this level");
  return best;
}

}  // namespace ffapprox::oracle
