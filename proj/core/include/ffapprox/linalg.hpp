#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ffapprox/field.hpp"
#include "ffapprox/laurent.hpp"

namespace ffapprox {

using FqVec = std::vector<Fq>;

// Solution set {x : A x = b} of a linear system over F_q.
struct AffineSpace {
  bool consistent = false;
  FqVec point;                 // particular solution, pivot coordinates reduced
  std::vector<FqVec> basis;    // direction space, reduced row echelon form
  std::vector<std::size_t> pivots;
  std::size_t dim_ambient = 0;

  std::size_t dim() const { return basis.size(); }
  bool contains_zero() const;
};

// Reduced row echelon form in place; returns pivot columns. Only the first
// `ncols` columns are eligible as pivots. Rows past the rank are left zero
// (in those columns) and not removed.
std::vector<std::size_t> rref(const Field& F, std::vector<FqVec>& rows, std::size_t ncols);

AffineSpace solve_affine(const Field& F, std::vector<FqVec> rows, std::size_t ncols, const FqVec& rhs);

// Lexicographically smallest nonzero element (coordinate 0 most significant).
std::optional<FqVec> lex_min_nonzero(const Field& F, const AffineSpace& s);
// Lexicographically smallest element of the coset (possibly zero).
std::optional<FqVec> lex_min_element(const AffineSpace& s);

// Process-wide caps, adjustable from the CLI.
struct Limits {
  static std::size_t max_unknowns();
  static void set_max_unknowns(std::size_t n);
};

// Unknown polynomials x_0..x_{k-1} with deg x_j <= bound[j] (bound -1 means
// the unknown is identically zero). Coordinates are ordered component by
// component, each polynomial highest degree first; this is the tie-break
// order used throughout.
class PolyUnknowns {
 public:
  explicit PolyUnknowns(std::vector<std::int64_t> bounds);
  std::size_t count() const { return static_cast<std::size_t>(bounds_.size()); }
  std::size_t total() const { return total_; }
  std::int64_t bound(std::size_t j) const { return bounds_[j]; }
  std::size_t index(std::size_t j, std::int64_t deg) const {
    return offset_[j] + static_cast<std::size_t>(bounds_[j] - deg);
  }
  std::vector<Poly> decode(const FieldPtr& f, const FqVec& x) const;

 private:
  std::vector<std::int64_t> bounds_;
  std::vector<std::size_t> offset_;
  std::size_t total_ = 0;
};

// Linear conditions on the Z-coefficients of sum_j M_j x_j + c.
class CoefficientSystem {
 public:
  CoefficientSystem(FieldPtr f, PolyUnknowns vars);

  // Coefficients of Z^t vanish for t_lo <= t <= t_hi. `M` has one entry per
  // unknown; `c` may be null.
  void require_vanishing(std::span<const Laurent> M, const Laurent* c, std::int64_t t_lo, std::int64_t t_hi);

  const PolyUnknowns& vars() const { return vars_; }
  AffineSpace solve() const;

 private:
  FieldPtr f_;
  PolyUnknowns vars_;
  std::vector<FqVec> rows_;
  FqVec rhs_;
};

// Highest Z-degree possibly carried by x (from its known leading term);
// very negative for zero.
std::int64_t zdeg_upper(const Laurent& x);

}  // namespace ffapprox
