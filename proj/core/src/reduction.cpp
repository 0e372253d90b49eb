#include <algorithm>
#include <stdexcept>

#include "ffapprox/errors.hpp"
#include "ffapprox/geometry.hpp"

namespace ffapprox {

namespace {

// Known part of a series: coefficients of Z^lo .. Z^{lo+c.size()-1}; all
// higher coefficients are zero, lower ones are unknown.
struct Window {
  std::int64_t lo = 0;
  std::vector<Fq> c;

  bool determined() const {
    for (auto x : c)
      if (x.index != 0) return true;
    return false;
  }
  std::int64_t deg() const {
    for (std::int64_t i = static_cast<std::int64_t>(c.size()) - 1; i >= 0; --i)
      if (c[static_cast<std::size_t>(i)].index != 0) return lo + i;
    return lo - 1;  // only an upper bound when undetermined
  }
  Fq at(std::int64_t z) const {
    std::int64_t i = z - lo;
    if (i < 0 || i >= static_cast<std::int64_t>(c.size())) return Fq{0};
    return c[static_cast<std::size_t>(i)];
  }
};

struct Undecidable {};

Window make_window(const Laurent& x, std::int64_t W, bool& w_limited) {
  Window out;
  const std::int64_t known_lo = -x.known_bound() + 1;  // lowest known Z-exponent
  if (known_lo < -W) w_limited = true;
  out.lo = std::max(-W, known_lo);
  if (x.is_exact_zero()) return out;
  const std::int64_t top = -x.val_lower_bound();
  if (top < out.lo) return out;
  auto win = x.window(-top, -out.lo + 1);  // exponents of w from -top to -lo
  out.c.resize(static_cast<std::size_t>(top - out.lo + 1));
  for (std::int64_t z = out.lo; z <= top; ++z)
    out.c[static_cast<std::size_t>(z - out.lo)] = win[static_cast<std::size_t>(-z + top)];
  return out;
}

// x -= a * Z^e * y
void axpy(const Field& F, Window& x, Fq a, std::int64_t e, const Window& y) {
  const std::int64_t lo = std::max(x.lo, y.lo + e);
  const std::int64_t top = std::max(x.lo + static_cast<std::int64_t>(x.c.size()) - 1,
                                    y.lo + e + static_cast<std::int64_t>(y.c.size()) - 1);
  std::vector<Fq> c(top >= lo ? static_cast<std::size_t>(top - lo + 1) : 0, Fq{0});
  for (std::int64_t z = lo; z <= top; ++z) {
    Fq v = x.at(z);
    Fq u = y.at(z - e);
    if (u.index != 0) v = F.sub(v, F.mul(a, u));
    c[static_cast<std::size_t>(z - lo)] = v;
  }
  while (!c.empty() && c.back().index == 0) c.pop_back();
  x.lo = lo;
  x.c = std::move(c);
}

struct ColumnInfo {
  std::int64_t deg;
  std::size_t pivot;
  Fq lead;
};

ColumnInfo inspect(const std::vector<Window>& col) {
  std::int64_t deg = -Laurent::kUnbounded;
  bool any = false;
  for (const auto& w : col)
    if (w.determined()) {
      deg = std::max(deg, w.deg());
      any = true;
    }
  if (!any) throw Undecidable{};
  std::size_t pivot = 0;
  for (std::size_t i = 0; i < col.size(); ++i) {
    const auto& w = col[i];
    if (!w.determined()) {
      if (w.lo - 1 >= deg) throw Undecidable{};
      continue;
    }
    if (w.deg() == deg) pivot = i;
  }
  return ColumnInfo{deg, pivot, col[pivot].at(deg)};
}

bool try_reduce(const LaurentMatrix& B, std::int64_t W, ReducedBasis& out, bool& w_limited) {
  const std::size_t d = B.rows();
  const FieldPtr& f = B.field();
  const Field& F = *f;
  std::vector<std::vector<Window>> cols(d, std::vector<Window>(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) cols[j][i] = make_window(B.at(i, j), W, w_limited);
  std::vector<PolyVec> U(d, PolyVec(d, Poly(f)));
  for (std::size_t j = 0; j < d; ++j) U[j][j] = Poly::one(f);

  try {
    std::vector<ColumnInfo> info(d);
    for (std::size_t j = 0; j < d; ++j) info[j] = inspect(cols[j]);
    for (std::size_t guard = 0;; ++guard) {
      if (guard > 1000000) throw std::logic_error("reduction did not terminate");
      // First pair of columns sharing a pivot row.
      std::size_t a = d, b = d;
      for (std::size_t j = 0; j < d && a == d; ++j)
        for (std::size_t k = j + 1; k < d; ++k)
          if (info[j].pivot == info[k].pivot) {
            a = j;
            b = k;
            break;
          }
      if (a == d) break;
      // Reduce the column of larger degree (ties: the later one).
      std::size_t hi = info[a].deg > info[b].deg ? a : b;
      std::size_t lo = hi == a ? b : a;
      const std::int64_t e = info[hi].deg - info[lo].deg;
      const Fq c = F.div(info[hi].lead, info[lo].lead);
      for (std::size_t i = 0; i < d; ++i) axpy(F, cols[hi][i], c, e, cols[lo][i]);
      const Poly mono = Poly::monomial(f, c, e);
      for (std::size_t i = 0; i < d; ++i)
        if (!U[lo][i].is_zero()) U[hi][i] = U[hi][i] - mono * U[lo][i];
      info[hi] = inspect(cols[hi]);
    }
    out.basis = B;
    out.transform = std::move(U);
    out.col_deg.resize(d);
    for (std::size_t j = 0; j < d; ++j) out.col_deg[j] = info[j].deg;
    return true;
  } catch (const Undecidable&) {
    return false;
  }
}

}  // namespace

ReducedBasis reduce_lattice(const LaurentMatrix& B) {
  if (B.rows() != B.cols() || B.rows() == 0) throw InputError("lattice basis must be square");
  const Laurent det = determinant(B);
  if (det.is_exact_zero()) throw PreconditionError("singular basis");
  const std::int64_t det_val = det.valuation();
  std::int64_t top = 0;
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = 0; j < B.cols(); ++j)
      if (!B.at(i, j).is_exact_zero()) top = std::max(top, std::abs(zdeg_upper(B.at(i, j))));
  std::int64_t W = 32 + 2 * top + std::abs(det_val);
  for (;;) {
    ReducedBasis R;
    bool w_limited = false;
    if (try_reduce(B, W, R, w_limited)) {
      std::int64_t sum = 0;
      for (auto x : R.col_deg) sum += x;
      if (sum != -det_val) throw std::logic_error("reduction: column degrees disagree with determinant");
      return R;
    }
    if (!w_limited || W > (1 << 16)) throw PrecisionExhausted("precision exhausted: reduction pivot below trusted window");
    W *= 2;
  }
}

MinimaResult successive_minima(const LaurentMatrix& B) {
  ReducedBasis R = reduce_lattice(B);
  const std::size_t d = B.rows();
  std::vector<std::size_t> order(d);
  for (std::size_t j = 0; j < d; ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return R.col_deg[a] < R.col_deg[b]; });
  MinimaResult out;
  out.covol_log = covol(B);
  Rational sum = 0;
  for (auto j : order) {
    out.lambda_logs.push_back(LogVal(R.col_deg[j]));
    sum += R.col_deg[j];
    LatticeVector v;
    v.coords = R.transform[j];
    v.vec = B.apply(v.coords);
    out.vectors.push_back(std::move(v));
  }
  out.product_ok = LogVal(sum) == LogVal(Rational(static_cast<std::int64_t>(d))) + out.covol_log;
  return out;
}

}  // namespace ffapprox
