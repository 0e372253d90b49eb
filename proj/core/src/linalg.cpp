#include "ffapprox/linalg.hpp"

#include <atomic>
#include <string>

#include "ffapprox/errors.hpp"

namespace ffapprox {

namespace {
std::atomic<std::size_t> g_max_unknowns{200000};
}

std::size_t Limits::max_unknowns() { return g_max_unknowns.load(); }
void Limits::set_max_unknowns(std::size_t n) { g_max_unknowns.store(n); }

bool AffineSpace::contains_zero() const {
  if (!consistent) return false;
  for (auto c : point)
    if (c.index != 0) return false;
  return true;
}

std::vector<std::size_t> rref(const Field& F, std::vector<FqVec>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][col].index == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    FqVec& piv = rows[r];
    const Fq inv = F.inv(piv[col]);
    if (inv != F.one())
      for (std::size_t k = col; k < piv.size(); ++k) piv[k] = F.mul(piv[k], inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      const Fq f = rows[i][col];
      if (f.index == 0) continue;
      FqVec& row = rows[i];
      for (std::size_t k = col; k < row.size(); ++k)
        if (piv[k].index != 0) row[k] = F.sub(row[k], F.mul(f, piv[k]));
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

AffineSpace solve_affine(const Field& F, std::vector<FqVec> rows, std::size_t ncols, const FqVec& rhs) {
  AffineSpace out;
  out.dim_ambient = ncols;
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(rhs[i]);
  auto pivots = rref(F, rows, ncols);
  // Rows past the rank have zero coefficient part.
  for (std::size_t i = pivots.size(); i < rows.size(); ++i)
    if (rows[i][ncols].index != 0) return out;
  out.consistent = true;
  out.point.assign(ncols, Fq{0});
  for (std::size_t i = 0; i < pivots.size(); ++i) out.point[pivots[i]] = rows[i][ncols];

  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<FqVec> kernel;
  for (std::size_t fcol = 0; fcol < ncols; ++fcol) {
    if (is_pivot[fcol]) continue;
    FqVec v(ncols, Fq{0});
    v[fcol] = F.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(rows[i][fcol]);
    kernel.push_back(std::move(v));
  }
  out.pivots = rref(F, kernel, ncols);
  kernel.resize(out.pivots.size());
  out.basis = std::move(kernel);
  // Reduce the particular point against the direction basis.
  for (std::size_t i = 0; i < out.pivots.size(); ++i) {
    const Fq c = out.point[out.pivots[i]];
    if (c.index == 0) continue;
    const FqVec& b = out.basis[i];
    for (std::size_t k = out.pivots[i]; k < ncols; ++k)
      if (b[k].index != 0) out.point[k] = F.sub(out.point[k], F.mul(c, b[k]));
  }
  return out;
}

std::optional<FqVec> lex_min_element(const AffineSpace& s) {
  if (!s.consistent) return std::nullopt;
  return s.point;
}

std::optional<FqVec> lex_min_nonzero(const Field& F, const AffineSpace& s) {
  if (!s.consistent) return std::nullopt;
  if (!s.contains_zero()) return s.point;
  if (s.basis.empty()) return std::nullopt;
  FqVec v = s.basis.back();
  const Fq u = F.smallest_unit();
  if (u != F.one())
    for (auto& c : v) c = F.mul(c, u);
  return v;
}

PolyUnknowns::PolyUnknowns(std::vector<std::int64_t> bounds) : bounds_(std::move(bounds)) {
  offset_.resize(bounds_.size());
  for (std::size_t j = 0; j < bounds_.size(); ++j) {
    offset_[j] = total_;
    if (bounds_[j] >= 0) total_ += static_cast<std::size_t>(bounds_[j] + 1);
  }
  if (total_ > Limits::max_unknowns())
    throw BudgetExceeded("enumeration cap exceeded: " + std::to_string(total_) + " unknowns");
}

std::vector<Poly> PolyUnknowns::decode(const FieldPtr& f, const FqVec& x) const {
  std::vector<Poly> out;
  out.reserve(bounds_.size());
  for (std::size_t j = 0; j < bounds_.size(); ++j) {
    std::vector<Fq> c;
    for (std::int64_t l = 0; l <= bounds_[j]; ++l) c.push_back(x[index(j, l)]);
    out.emplace_back(f, std::move(c));
  }
  return out;
}

CoefficientSystem::CoefficientSystem(FieldPtr f, PolyUnknowns vars)
    : f_(std::move(f)), vars_(std::move(vars)) {}

void CoefficientSystem::require_vanishing(std::span<const Laurent> M, const Laurent* c,
                                          std::int64_t t_lo, std::int64_t t_hi) {
  if (t_hi < t_lo) return;
  const Field& F = *f_;
  const std::size_t base = rows_.size();
  const std::size_t nrows = static_cast<std::size_t>(t_hi - t_lo + 1);
  rows_.resize(base + nrows, FqVec(vars_.total(), Fq{0}));
  rhs_.resize(base + nrows, Fq{0});
  for (std::size_t j = 0; j < vars_.count(); ++j) {
    const std::int64_t D = vars_.bound(j);
    if (D < 0 || M[j].is_exact_zero()) continue;
    // Coefficient of x_{j,l} in row t is the w-coefficient l - t of M_j.
    const std::int64_t k0 = -t_hi, k1 = D - t_lo + 1;
    const std::int64_t lo = std::max(k0, M[j].val_lower_bound());
    if (lo >= k1) continue;
    auto win = M[j].window(lo, k1);
    for (std::int64_t t = t_lo; t <= t_hi; ++t) {
      FqVec& row = rows_[base + static_cast<std::size_t>(t - t_lo)];
      for (std::int64_t l = 0; l <= D; ++l) {
        const std::int64_t k = l - t;
        if (k < lo) continue;
        row[vars_.index(j, l)] = win[static_cast<std::size_t>(k - lo)];
      }
    }
  }
  if (c && !c->is_exact_zero()) {
    for (std::int64_t t = t_lo; t <= t_hi; ++t) {
      const std::int64_t k = -t;
      if (k < c->val_lower_bound()) continue;
      rhs_[base + static_cast<std::size_t>(t - t_lo)] = F.neg(c->coef(k));
    }
  }
}

AffineSpace CoefficientSystem::solve() const {
  return solve_affine(*f_, rows_, vars_.total(), rhs_);
}

std::int64_t zdeg_upper(const Laurent& x) {
  if (x.is_exact_zero()) return -Laurent::kUnbounded;
  return -x.val_lower_bound();
}

}  // namespace ffapprox
