#include "ffapprox/poly.hpp"

#include <stdexcept>

namespace ffapprox {

Poly::Poly(FieldPtr f, std::vector<Fq> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back().index == 0) c_.pop_back();
}

Poly Poly::constant(FieldPtr f, Fq c) { return Poly(std::move(f), {c}); }

Poly Poly::monomial(FieldPtr f, Fq c, std::int64_t deg) {
  if (deg < 0) throw std::invalid_argument("monomial: negative degree");
  std::vector<Fq> v(static_cast<std::size_t>(deg) + 1, Fq{0});
  v.back() = c;
  return Poly(std::move(f), std::move(v));
}

Fq Poly::coeff(std::int64_t k) const {
  if (k < 0 || k >= static_cast<std::int64_t>(c_.size())) return Fq{0};
  return c_[static_cast<std::size_t>(k)];
}

Fq Poly::leading() const { return c_.empty() ? Fq{0} : c_.back(); }

Poly Poly::operator-() const {
  Poly r(f_);
  r.c_.reserve(c_.size());
  for (auto c : c_) r.c_.push_back(f_->neg(c));
  return r;
}

Poly Poly::scaled(Fq c) const {
  Poly r(f_);
  if (c.index == 0) return r;
  r.c_.reserve(c_.size());
  for (auto x : c_) r.c_.push_back(f_->mul(x, c));
  return r;
}

Poly Poly::shifted(std::int64_t k) const {
  if (k < 0) throw std::invalid_argument("shifted: negative shift");
  if (c_.empty()) return *this;
  Poly r(f_);
  r.c_.assign(static_cast<std::size_t>(k), Fq{0});
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  return scaled(f_->inv(c_.back()));
}

static const FieldPtr& pick(const Poly& a, const Poly& b) { return a.field() ? a.field() : b.field(); }

Poly operator+(const Poly& a, const Poly& b) {
  const FieldPtr& f = pick(a, b);
  std::vector<Fq> c(std::max(a.c_.size(), b.c_.size()), Fq{0});
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f->add(a.coeff(i), b.coeff(i));
  return Poly(f, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  const FieldPtr& f = pick(a, b);
  std::vector<Fq> c(std::max(a.c_.size(), b.c_.size()), Fq{0});
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f->sub(a.coeff(i), b.coeff(i));
  return Poly(f, std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  const FieldPtr& f = pick(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(f);
  std::vector<Fq> c(a.c_.size() + b.c_.size() - 1, Fq{0});
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].index == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      c[i + j] = f->add(c[i + j], f->mul(a.c_[i], b.c_[j]));
  }
  return Poly(f, std::move(c));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const FieldPtr& f = b.field();
  std::vector<Fq> rem = a.coeffs();
  const std::int64_t db = b.degree();
  const Fq inv_lead = f->inv(b.leading());
  std::int64_t dq = a.degree() - db;
  std::vector<Fq> quot(dq >= 0 ? static_cast<std::size_t>(dq) + 1 : 0, Fq{0});
  for (std::int64_t k = a.degree(); k >= db; --k) {
    Fq lead = rem[static_cast<std::size_t>(k)];
    if (lead.index == 0) continue;
    Fq c = f->mul(lead, inv_lead);
    quot[static_cast<std::size_t>(k - db)] = c;
    for (std::int64_t i = 0; i <= db; ++i) {
      auto& slot = rem[static_cast<std::size_t>(k - db + i)];
      slot = f->sub(slot, f->mul(c, b.coeffs()[static_cast<std::size_t>(i)]));
    }
  }
  return {Poly(f, std::move(quot)), Poly(f, std::move(rem))};
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string Poly::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::int64_t k = degree(); k >= 0; --k) {
    Fq c = c_[static_cast<std::size_t>(k)];
    if (c.index == 0) continue;
    if (!out.empty()) out += " + ";
    std::string cs;
    if (f_->e() == 1) {
      cs = std::to_string(c.index);
    } else {
      cs = "[";
      auto v = f_->coords(c);
      for (std::size_t i = 0; i < v.size(); ++i) cs += (i ? "," : "") + std::to_string(v[i]);
      cs += "]";
    }
    if (k == 0) {
      out += cs;
    } else {
      if (c != f_->one()) out += cs + "*";
      out += k == 1 ? "Z" : "Z^" + std::to_string(k);
    }
  }
  return out;
}

RatFunc::RatFunc(Poly num) : num_(num), den_(Poly::one(num.field())) {}

RatFunc::RatFunc(Poly num, Poly den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  const FieldPtr f = den.field();
  if (num.is_zero()) {
    num_ = Poly(f);
    den_ = Poly::one(f);
    return;
  }
  Poly g = gcd(num, den);
  num = divmod(num, g).first;
  den = divmod(den, g).first;
  Fq lead_inv = f->inv(den.leading());
  num_ = num.scaled(lead_inv);
  den_ = den.scaled(lead_inv);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -num_;
  return r;
}

RatFunc RatFunc::inverse() const {
  if (num_.is_zero()) throw std::domain_error("inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::times_Z_power(std::int64_t k) const {
  const FieldPtr& f = den_.field();
  if (k >= 0) return RatFunc(num_ * Poly::monomial(f, f->one(), k), den_);
  return RatFunc(num_, den_ * Poly::monomial(f, f->one(), -k));
}

RatFunc RatFunc::frac() const {
  RatFunc r;
  r.num_ = divmod(num_, den_).second;
  r.den_ = den_;
  if (r.num_.is_zero()) r.den_ = Poly::one(den_.field());
  return r;
}

Poly RatFunc::poly_part() const { return divmod(num_, den_).first; }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

std::string RatFunc::str() const {
  if (is_polynomial()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace ffapprox
