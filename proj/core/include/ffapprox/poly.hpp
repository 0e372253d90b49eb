#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffapprox/field.hpp"

namespace ffapprox {

// Element of F_q[Z]; coefficients lowest degree first, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr f) : f_(std::move(f)) {}
  Poly(FieldPtr f, std::vector<Fq> coeffs);

  static Poly constant(FieldPtr f, Fq c);
  static Poly monomial(FieldPtr f, Fq c, std::int64_t deg);
  static Poly Z(FieldPtr f) { return monomial(f, f->one(), 1); }
  static Poly one(FieldPtr f) { return constant(f, f->one()); }

  const FieldPtr& field() const { return f_; }
  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
  Fq coeff(std::int64_t k) const;
  Fq leading() const;
  const std::vector<Fq>& coeffs() const { return c_; }

  Poly operator-() const;
  Poly scaled(Fq c) const;
  Poly shifted(std::int64_t k) const;  // times Z^k, k >= 0
  Poly monic() const;
  bool is_monic() const { return !c_.empty() && c_.back() == f_->one(); }

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  std::string str() const;

 private:
  void trim();
  FieldPtr f_;
  std::vector<Fq> c_;
};

// Quotient and remainder; throws std::domain_error when b is zero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
// Monic gcd (zero iff both are zero).
Poly gcd(Poly a, Poly b);

// Reduced fraction with monic denominator.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(Poly num);
  RatFunc(Poly num, Poly den);  // normalizes; throws on zero den

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const FieldPtr& field() const { return num_.field(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  // v(x) = deg den - deg num; undefined for zero.
  std::int64_t valuation() const { return den_.degree() - num_.degree(); }

  RatFunc operator-() const;
  RatFunc inverse() const;
  RatFunc times_Z_power(std::int64_t k) const;
  // Strictly-negative-degree part: (num mod den)/den.
  RatFunc frac() const;
  Poly poly_part() const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string str() const;

 private:
  Poly num_, den_;
};

}  // namespace ffapprox
