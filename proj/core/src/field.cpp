#include "ffapprox/field.hpp"

#include <stdexcept>
#include <string>

#include "ffapprox/errors.hpp"

namespace ffapprox {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using Coeffs = std::vector<std::uint32_t>;  // over Z_p, lowest first

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b over Z_p.
Coeffs mod_zp(Coeffs a, const Coeffs& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    std::uint32_t lead = a.back();
    std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      std::uint64_t sub = static_cast<std::uint64_t>(lead) * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

bool irreducible(const Coeffs& f, std::uint32_t p) {
  const std::uint32_t e = static_cast<std::uint32_t>(f.size() - 1);
  // Every monic divisor candidate of degree 1..e/2.
  for (std::uint32_t deg = 1; deg <= e / 2; ++deg) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < deg; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Coeffs g(deg + 1);
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < deg; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[deg] = 1;
      if (mod_zp(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

FieldPtr Field::make(const FieldSpec& spec) {
  if (!is_prime(spec.p)) throw InputError("field: p=" + std::to_string(spec.p) + " is not prime");
  if (spec.e < 1) throw InputError("field: extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < spec.e; ++i) {
    q *= spec.p;
    if (q > kMaxOrder) throw InputError("field: q exceeds 2^16");
  }
  if (spec.e == 1) {
    if (!spec.modulus.empty()) throw InputError("field: modulus given for prime field");
  } else {
    if (spec.modulus.size() != spec.e + 1)
      throw InputError("field: modulus must have degree e");
    for (auto c : spec.modulus)
      if (c >= spec.p) throw InputError("field: modulus coefficient out of range");
    if (spec.modulus.back() != 1) throw InputError("field: modulus must be monic");
    if (!irreducible(spec.modulus, spec.p)) throw InputError("field: modulus is reducible");
  }
  return FieldPtr(new Field(spec));
}

FieldPtr Field::prime(std::uint32_t p) { return make(FieldSpec{p, 1, {}}); }

Field::Field(const FieldSpec& spec) : spec_(spec) {
  const std::uint32_t p = spec.p, e = spec.e;
  weight_.assign(e, 1);
  for (std::int64_t i = static_cast<std::int64_t>(e) - 2; i >= 0; --i) weight_[i] = weight_[i + 1] * p;
  q_ = weight_[0] * p;
  one_ = weight_[0];

  // Find a generator of the multiplicative group and fill log/antilog tables.
  if (q_ == 2) {
    exp_ = {one_, one_};
    log_ = {0, 0};
    return;
  }
  for (std::uint32_t g = 1; g < q_; ++g) {
    std::vector<std::uint32_t> ex;
    ex.reserve(q_ - 1);
    std::uint32_t x = one_;
    bool primitive = true;
    for (std::uint32_t k = 0; k < q_ - 1; ++k) {
      if (k > 0 && x == one_) {
        primitive = false;
        break;
      }
      ex.push_back(x);
      x = mul_coords(x, g);
    }
    if (!primitive || x != one_) continue;
    exp_.resize(2 * (q_ - 1));
    log_.assign(q_, 0);
    for (std::uint32_t k = 0; k < q_ - 1; ++k) {
      exp_[k] = exp_[k + q_ - 1] = ex[k];
      log_[ex[k]] = k;
    }
    return;
  }
  throw std::logic_error("field: no primitive element found");
}

std::vector<std::uint32_t> Field::coords(Fq a) const {
  std::vector<std::uint32_t> c(spec_.e);
  std::uint32_t x = a.index;
  for (std::uint32_t i = 0; i < spec_.e; ++i) {
    c[i] = x / weight_[i];
    x %= weight_[i];
  }
  return c;
}

Fq Field::from_coords(std::span<const std::uint32_t> c) const {
  std::uint32_t x = 0;
  for (std::uint32_t i = 0; i < spec_.e; ++i) x += (c[i] % spec_.p) * weight_[i];
  return Fq{x};
}

// Schoolbook product of coordinate vectors reduced by the modulus. Used only
// while building tables. Coordinate i is the coefficient of t^i.
std::uint32_t Field::mul_coords(std::uint32_t a, std::uint32_t b) const {
  const std::uint32_t p = spec_.p, e = spec_.e;
  if (e == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
  auto ca = coords(Fq{a}), cb = coords(Fq{b});
  Coeffs prod(2 * e - 1, 0);
  for (std::uint32_t i = 0; i < e; ++i)
    for (std::uint32_t j = 0; j < e; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p);
  Coeffs r = mod_zp(prod, spec_.modulus, p);
  r.resize(e, 0);
  return from_coords(r).index;
}

Fq Field::add(Fq a, Fq b) const {
  const std::uint32_t p = spec_.p;
  if (spec_.e == 1) return Fq{(a.index + b.index) % p};
  if (p == 2) return Fq{a.index ^ b.index};
  std::uint32_t x = a.index, y = b.index, r = 0;
  for (std::uint32_t i = 0; i < spec_.e; ++i) {
    std::uint32_t w = weight_[i];
    r += ((x / w + y / w) % p) * w;
    x %= w;
    y %= w;
  }
  return Fq{r};
}

Fq Field::neg(Fq a) const {
  const std::uint32_t p = spec_.p;
  if (p == 2) return a;
  if (spec_.e == 1) return Fq{(p - a.index) % p};
  std::uint32_t x = a.index, r = 0;
  for (std::uint32_t i = 0; i < spec_.e; ++i) {
    std::uint32_t w = weight_[i];
    r += ((p - x / w) % p) * w;
    x %= w;
  }
  return Fq{r};
}

Fq Field::sub(Fq a, Fq b) const { return add(a, neg(b)); }

Fq Field::mul(Fq a, Fq b) const {
  if (a.index == 0 || b.index == 0) return Fq{0};
  if (spec_.e == 1)
    return Fq{static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.index) * b.index % spec_.p)};
  return Fq{exp_[log_[a.index] + log_[b.index]]};
}

Fq Field::inv(Fq a) const {
  if (a.index == 0) throw std::domain_error("field: inverse of zero");
  if (q_ == 2) return a;
  return Fq{exp_[(q_ - 1 - log_[a.index]) % (q_ - 1)]};
}

Fq Field::from_int(std::int64_t v) const {
  std::int64_t p = spec_.p;
  std::int64_t r = ((v % p) + p) % p;
  return Fq{static_cast<std::uint32_t>(r) * one_};
}

}  // namespace ffapprox
