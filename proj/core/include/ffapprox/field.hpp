#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace ffapprox {

// Element of F_q. The index encodes the coefficient vector (c_0, ..., c_{e-1})
// as sum c_i p^{e-1-i}, so index order is the lexicographic element order.
struct Fq {
  std::uint32_t index = 0;
  friend bool operator==(Fq, Fq) = default;
  friend auto operator<=>(Fq, Fq) = default;
};

struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t e = 1;
  // Monic irreducible modulus of degree e over F_p, lowest coefficient first.
  // Empty iff e == 1.
  std::vector<std::uint32_t> modulus;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  // Validates the spec (prime p, irreducible modulus, q within cap).
  static FieldPtr make(const FieldSpec& spec);
  static FieldPtr prime(std::uint32_t p);

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t p() const { return spec_.p; }
  std::uint32_t e() const { return spec_.e; }
  std::uint32_t q() const { return q_; }

  Fq zero() const { return Fq{0}; }
  Fq one() const { return Fq{one_}; }
  // Smallest nonzero element in the element order.
  Fq smallest_unit() const { return Fq{1}; }
  Fq element(std::uint32_t index) const { return Fq{index}; }

  Fq add(Fq a, Fq b) const;
  Fq sub(Fq a, Fq b) const;
  Fq neg(Fq a) const;
  Fq mul(Fq a, Fq b) const;
  Fq inv(Fq a) const;  // throws std::domain_error on zero
  Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
  Fq from_int(std::int64_t v) const;

  std::vector<std::uint32_t> coords(Fq a) const;
  Fq from_coords(std::span<const std::uint32_t> c) const;

  bool same_as(const Field& other) const { return spec_ == other.spec_; }

 private:
  explicit Field(const FieldSpec& spec);
  std::uint32_t mul_coords(std::uint32_t a, std::uint32_t b) const;

  FieldSpec spec_;
  std::uint32_t q_ = 0;
  std::uint32_t one_ = 1;
  std::vector<std::uint32_t> weight_;  // p^{e-1-i}
  std::vector<std::uint32_t> exp_;     // g^k, k in [0, 2(q-1))
  std::vector<std::uint32_t> log_;     // log_g of nonzero index
};

bool is_prime(std::uint64_t n);

}  // namespace ffapprox
