#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffapprox/laurent.hpp"
#include "ffapprox/linalg.hpp"
#include "ffapprox/logval.hpp"
#include "ffapprox/poly.hpp"

namespace ffapprox {

using VecKv = std::vector<Laurent>;
using PolyVec = std::vector<Poly>;

class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  LaurentMatrix(FieldPtr f, std::size_t rows, std::size_t cols);
  static LaurentMatrix identity(FieldPtr f, std::size_t d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldPtr& field() const { return f_; }
  Laurent& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Laurent& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  VecKv row(std::size_t i) const;
  VecKv column(std::size_t j) const;
  LaurentMatrix transposed() const;
  bool all_exact() const;
  // M * v for a polynomial vector v.
  VecKv apply(const PolyVec& v) const;

 private:
  FieldPtr f_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Laurent> a_;
};

// Weights r (length m) and s (length n) with |r| = |s|.
struct WeightedNormContext {
  std::vector<std::int64_t> r, s;

  WeightedNormContext() = default;
  WeightedNormContext(std::vector<std::int64_t> r_, std::vector<std::int64_t> s_);
  // r_i = n, s_j = m.
  static WeightedNormContext standard(std::size_t m, std::size_t n);

  std::size_t m() const { return r.size(); }
  std::size_t n() const { return s.size(); }
  std::size_t d() const { return r.size() + s.size(); }
  std::int64_t sum_r() const;
  std::int64_t sum_s() const;
  std::int64_t min_r() const;
  std::int64_t min_s() const;
  std::int64_t max_r() const;
  std::int64_t max_s() const;
  std::int64_t lcm_r() const;
  std::int64_t lcm_s() const;
  // (r_1..r_m, s_1..s_n)
  std::vector<std::int64_t> combined() const;
  WeightedNormContext swapped() const { return WeightedNormContext(s, r); }
  void validate() const;  // throws InputError
};

// Genus and degree of the place; everything here is evaluated at (0, 1).
struct CurveParams {
  std::int64_t genus = 0;
  std::int64_t deg_v = 1;
};

// max_k log|v_k| / w_k
LogVal weighted_norm(std::span<const Laurent> v, std::span<const std::int64_t> w);
// max_k log dist(v_k, R_v) / w_k
LogVal weighted_dist(std::span<const Laurent> v, std::span<const std::int64_t> w);
LogVal sup_norm(std::span<const Laurent> v);
inline LogVal rnorm(std::span<const Laurent> v, const WeightedNormContext& c) { return weighted_norm(v, c.r); }
inline LogVal snorm(std::span<const Laurent> v, const WeightedNormContext& c) { return weighted_norm(v, c.s); }
inline LogVal rdist(std::span<const Laurent> v, const WeightedNormContext& c) { return weighted_dist(v, c.r); }
inline LogVal sdist(std::span<const Laurent> v, const WeightedNormContext& c) { return weighted_dist(v, c.s); }
LogVal poly_weighted_norm(const PolyVec& v, std::span<const std::int64_t> w);

VecKv to_kv(const PolyVec& v);
bool is_zero(const PolyVec& v);
// A * y and the transpose product.
VecKv mat_vec(const LaurentMatrix& A, const PolyVec& y);
VecKv mat_vec_transposed(const LaurentMatrix& A, const PolyVec& x);

// Determinant by elimination (exact when all entries are exact).
Laurent determinant(const LaurentMatrix& B);
// log covol of B R_v^d = -v(det B) + (g-1)d, here -v(det B) - d.
LogVal covol(const LaurentMatrix& B);
LogVal covol_Rv_log(std::size_t d, const CurveParams& cp = {});

// Column-reduced (weak Popov) form B*U of a lattice basis.
struct ReducedBasis {
  LaurentMatrix basis;                  // the input basis, columns span the lattice
  std::vector<PolyVec> transform;       // transform[j] = coordinates of reduced column j
  std::vector<std::int64_t> col_deg;    // log sup norm of reduced column j
};

ReducedBasis reduce_lattice(const LaurentMatrix& B);

struct LatticeVector {
  PolyVec coords;  // in the input basis
  VecKv vec;       // B * coords
};

struct MinimaResult {
  std::vector<LogVal> lambda_logs;       // nondecreasing
  std::vector<LatticeVector> vectors;    // realizing vectors, same order
  LogVal covol_log;
  bool product_ok = false;               // sum lambda = d + covol
};

MinimaResult successive_minima(const LaurentMatrix& B);

// Lexicographically smallest coordinate vector w with B w + u inside the box
// deg (B w + u)_i <= zdeg_max[i]. Without a translation, the smallest
// nonzero w. nullopt if none exists.
std::optional<LatticeVector> lex_min_in_box(const ReducedBasis& R, std::span<const std::int64_t> zdeg_max,
                                            const VecKv* translation = nullptr);

struct SystoleResult {
  LogVal value;
  LatticeVector witness;
};
// min over nonzero lattice vectors (theta, xi) of max(||theta||_r, ||xi||_s).
SystoleResult rs_systole(const LaurentMatrix& B, const WeightedNormContext& ctx);
SystoleResult rs_systole(const ReducedBasis& R, const WeightedNormContext& ctx);

// Dirichlet: nonzero y with |<A_i y>| <= q^{-rprime_i}, |y_j| <= q^{sprime_j}.
PolyVec dirichlet_solve(const LaurentMatrix& A, std::span<const std::int64_t> rprime,
                        std::span<const std::int64_t> sprime);
PolyVec dirichlet_weighted(const LaurentMatrix& A, std::int64_t alpha, const WeightedNormContext& ctx);
bool dirichlet_check(const LaurentMatrix& A, const PolyVec& y, std::int64_t alpha, const WeightedNormContext& ctx);

std::vector<std::int64_t> pseudocompound(std::span<const std::int64_t> alpha);

struct KappaConstants {
  Rational beta, kappa1, kappa2, kappa3, kappa4;
};
Rational beta_d(std::size_t d, const CurveParams& cp = {});
KappaConstants kappa_constants(const WeightedNormContext& ctx, const CurveParams& cp = {});
// Exponent bound for M_i Y_{i+1}: (deg v + g - 1)(1/min r + 1/min s) + 2 deg v.
Rational best_approx_product_bound(const WeightedNormContext& ctx, const CurveParams& cp = {});

struct TransferResult {
  PolyVec x;
  LogVal x_rnorm;        // ||x||_r
  LogVal tAx_sdist;      // <tA x>_s
  Rational X_log;        // log X = kappa3 - kappa4 eps_log + Y_log
  Rational bound_log;    // kappa1 + kappa2 eps_log - log X
  bool ok = false;
};
TransferResult transfer(const LaurentMatrix& A, const PolyVec& y, std::int64_t eps_log, std::int64_t Y_log,
                        const WeightedNormContext& ctx);

}  // namespace ffapprox
