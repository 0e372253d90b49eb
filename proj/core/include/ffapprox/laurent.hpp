#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ffapprox/field.hpp"
#include "ffapprox/logval.hpp"
#include "ffapprox/poly.hpp"

namespace ffapprox {

// Laurent series in w = Z^{-1} over F_q. Exponents below are exponents of w,
// so coef(k) is the coefficient of Z^{-k}.
//
// Exact values carry a RatFunc backing and expand lazily. Truncated values
// know coefficients for exponents < known_bound(); anything that needs an
// unknown coefficient throws PrecisionExhausted.
class Laurent {
 public:
  static constexpr std::int64_t kUnbounded = std::int64_t{1} << 60;

  Laurent() = default;  // empty handle; only for containers

  static Laurent zero(FieldPtr f);
  static Laurent exact(const RatFunc& f);
  static Laurent from_poly(const Poly& p) { return exact(RatFunc(p)); }
  static Laurent constant(FieldPtr f, Fq c);
  // c * Z^zdeg
  static Laurent monomial(FieldPtr f, Fq c, std::int64_t zdeg);
  // Coefficients for exponents val, val+1, ...; prec coefficients are trusted
  // (entries beyond coeffs.size() inside the window are zero).
  static Laurent truncated(FieldPtr f, std::int64_t val, std::vector<Fq> coeffs, std::int64_t prec);
  // Exact expansion with at least prec coefficients materialized.
  static Laurent from_ratfunc(const RatFunc& f, std::int64_t prec);

  bool valid() const { return rep_ != nullptr; }
  const FieldPtr& field() const;
  bool is_exact() const;
  const RatFunc* backing() const;
  bool is_exact_zero() const;
  // Exponent bound K: every coefficient with exponent < K is known.
  std::int64_t known_bound() const;
  // True when the valuation is determined (nonzero with a known leading term).
  bool has_valuation() const;
  // Throws PrecisionExhausted if undecidable, std::logic_error for exact zero.
  std::int64_t valuation() const;
  // Valuation if known, else the exponent below which all coefficients vanish.
  std::int64_t val_lower_bound() const;

  Fq coef(std::int64_t k) const;
  // Coefficients for exponents [k0, k1).
  std::vector<Fq> window(std::int64_t k0, std::int64_t k1) const;

  LogVal abs() const;
  LogVal dist_to_Rv() const;
  Laurent frac() const;
  Poly poly_part() const;

  Laurent operator-() const;
  Laurent scaled(Fq c) const;
  Laurent times_Z_power(std::int64_t k) const;
  Laurent inverse() const;

  friend Laurent operator+(const Laurent& a, const Laurent& b);
  friend Laurent operator-(const Laurent& a, const Laurent& b);
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend Laurent operator/(const Laurent& a, const Laurent& b) { return a * b.inverse(); }

  // Coefficient-wise agreement on exponents < upto (both must know them).
  bool agrees_with(const Laurent& other, std::int64_t upto) const;

  std::string str(std::int64_t max_terms = 12) const;

 private:
  struct Rep;
  explicit Laurent(std::shared_ptr<Rep> rep) : rep_(std::move(rep)) {}
  static Laurent from_window(FieldPtr f, std::int64_t start, std::vector<Fq> c, std::int64_t known);
  std::shared_ptr<Rep> rep_;
};

}  // namespace ffapprox
