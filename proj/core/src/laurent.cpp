#include "ffapprox/laurent.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "ffapprox/errors.hpp"

namespace ffapprox {

namespace {
std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = a + b;
  return std::min(r, Laurent::kUnbounded);
}
}  // namespace

struct Laurent::Rep {
  FieldPtr f;
  std::optional<RatFunc> backing;
  std::int64_t val = kUnbounded;    // first nonzero exponent, or known if undetermined
  std::int64_t known = kUnbounded;  // kUnbounded for exact values
  std::vector<Fq> nrev, drev;       // reversed numerator/denominator for expansion
  mutable std::mutex mu;
  mutable std::vector<Fq> coeffs;   // coeffs[i] is the coefficient of w^{val+i}

  // Caller holds mu. Extends an exact expansion through exponent k.
  void extend_to(std::int64_t k) const {
    const std::int64_t need = k - val + 1;
    const FieldPtr& F = f;
    while (static_cast<std::int64_t>(coeffs.size()) < need) {
      const std::size_t i = coeffs.size();
      Fq c = i < nrev.size() ? nrev[i] : Fq{0};
      const std::size_t lim = std::min(i, drev.size() - 1);
      for (std::size_t j = 1; j <= lim; ++j) {
        if (drev[j].index == 0) continue;
        c = F->sub(c, F->mul(drev[j], coeffs[i - j]));
      }
      coeffs.push_back(c);
    }
  }
};

Laurent Laurent::zero(FieldPtr f) { return exact(RatFunc(Poly(std::move(f)))); }

Laurent Laurent::constant(FieldPtr f, Fq c) { return exact(RatFunc(Poly::constant(f, c))); }

Laurent Laurent::monomial(FieldPtr f, Fq c, std::int64_t zdeg) {
  if (zdeg >= 0) return exact(RatFunc(Poly::monomial(f, c, zdeg)));
  return exact(RatFunc(Poly::constant(f, c), Poly::monomial(f, f->one(), -zdeg)));
}

Laurent Laurent::exact(const RatFunc& fn) {
  auto rep = std::make_shared<Rep>();
  rep->f = fn.den().field();
  rep->backing = fn;
  rep->known = kUnbounded;
  if (fn.is_zero()) {
    rep->val = kUnbounded;
    return Laurent(rep);
  }
  const Poly& n = fn.num();
  const Poly& d = fn.den();
  rep->val = d.degree() - n.degree();
  rep->nrev.assign(n.coeffs().rbegin(), n.coeffs().rend());
  rep->drev.assign(d.coeffs().rbegin(), d.coeffs().rend());  // drev[0] = 1
  return Laurent(rep);
}

Laurent Laurent::from_ratfunc(const RatFunc& fn, std::int64_t prec) {
  Laurent x = exact(fn);
  if (!fn.is_zero() && prec > 0) {
    std::lock_guard<std::mutex> lock(x.rep_->mu);
    x.rep_->extend_to(x.rep_->val + prec - 1);
  }
  return x;
}

Laurent Laurent::from_window(FieldPtr f, std::int64_t start, std::vector<Fq> c, std::int64_t known) {
  auto rep = std::make_shared<Rep>();
  rep->f = std::move(f);
  rep->known = known;
  std::size_t first = 0;
  while (first < c.size() && c[first].index == 0) ++first;
  if (first == c.size()) {
    rep->val = known;
  } else {
    rep->val = start + static_cast<std::int64_t>(first);
    std::size_t last = c.size();
    while (last > first && c[last - 1].index == 0) --last;
    rep->coeffs.assign(c.begin() + static_cast<std::ptrdiff_t>(first),
                       c.begin() + static_cast<std::ptrdiff_t>(last));
  }
  return Laurent(rep);
}

Laurent Laurent::truncated(FieldPtr f, std::int64_t val, std::vector<Fq> coeffs, std::int64_t prec) {
  if (prec < 0) throw std::invalid_argument("truncated Laurent: negative precision");
  if (static_cast<std::int64_t>(coeffs.size()) > prec) coeffs.resize(static_cast<std::size_t>(prec));
  return from_window(std::move(f), val, std::move(coeffs), val + prec);
}

const FieldPtr& Laurent::field() const { return rep_->f; }
bool Laurent::is_exact() const { return rep_->backing.has_value(); }
const RatFunc* Laurent::backing() const { return rep_->backing ? &*rep_->backing : nullptr; }
bool Laurent::is_exact_zero() const { return rep_->backing && rep_->backing->is_zero(); }
std::int64_t Laurent::known_bound() const { return rep_->known; }

bool Laurent::has_valuation() const {
  if (rep_->backing) return !rep_->backing->is_zero();
  return rep_->val < rep_->known;
}

std::int64_t Laurent::valuation() const {
  if (is_exact_zero()) throw std::logic_error("valuation of zero");
  if (!has_valuation()) throw PrecisionExhausted("precision exhausted: valuation undecidable");
  return rep_->val;
}

std::int64_t Laurent::val_lower_bound() const { return rep_->val; }

Fq Laurent::coef(std::int64_t k) const {
  const Rep& r = *rep_;
  if (k >= r.known) throw PrecisionExhausted();
  if (k < r.val) return Fq{0};
  std::int64_t i = k - r.val;
  if (r.backing) {
    std::lock_guard<std::mutex> lock(r.mu);
    r.extend_to(k);
    return r.coeffs[static_cast<std::size_t>(i)];
  }
  return i < static_cast<std::int64_t>(r.coeffs.size()) ? r.coeffs[static_cast<std::size_t>(i)] : Fq{0};
}

std::vector<Fq> Laurent::window(std::int64_t k0, std::int64_t k1) const {
  const Rep& r = *rep_;
  if (k1 <= k0) return {};
  if (k1 > r.known) throw PrecisionExhausted();
  std::vector<Fq> out(static_cast<std::size_t>(k1 - k0), Fq{0});
  if (r.backing && r.backing->is_zero()) return out;
  std::unique_lock<std::mutex> lock(r.mu, std::defer_lock);
  if (r.backing) {
    lock.lock();
    r.extend_to(k1 - 1);
  }
  for (std::int64_t k = std::max(k0, r.val); k < k1; ++k) {
    std::size_t i = static_cast<std::size_t>(k - r.val);
    if (i < r.coeffs.size()) out[static_cast<std::size_t>(k - k0)] = r.coeffs[i];
  }
  return out;
}

LogVal Laurent::abs() const {
  if (is_exact_zero()) return LogVal::neg_inf();
  return LogVal(-valuation());
}

Laurent Laurent::frac() const {
  if (rep_->backing) return exact(rep_->backing->frac());
  const std::int64_t known = std::max<std::int64_t>(rep_->known, 1);
  const std::int64_t start = 1;
  return from_window(rep_->f, start, window(start, rep_->known > 1 ? rep_->known : 1), known);
}

LogVal Laurent::dist_to_Rv() const { return frac().abs(); }

Poly Laurent::poly_part() const {
  if (rep_->backing) return rep_->backing->poly_part();
  if (rep_->known < 1) throw PrecisionExhausted("precision exhausted: polynomial part unknown");
  if (rep_->val > 0) return Poly(rep_->f);
  auto w = window(rep_->val, 1);  // exponents val..0
  std::vector<Fq> c(w.rbegin(), w.rend());  // degree 0 first
  return Poly(rep_->f, std::move(c));
}

Laurent Laurent::operator-() const {
  if (rep_->backing) return exact(-*rep_->backing);
  std::vector<Fq> c = rep_->coeffs;
  for (auto& x : c) x = rep_->f->neg(x);
  return from_window(rep_->f, rep_->val, std::move(c), rep_->known);
}

Laurent Laurent::scaled(Fq c) const {
  if (c.index == 0) return zero(rep_->f);
  if (rep_->backing) return exact(*rep_->backing * RatFunc(Poly::constant(rep_->f, c)));
  std::vector<Fq> v = rep_->coeffs;
  for (auto& x : v) x = rep_->f->mul(x, c);
  return from_window(rep_->f, rep_->val, std::move(v), rep_->known);
}

Laurent Laurent::times_Z_power(std::int64_t k) const {
  if (rep_->backing) return exact(rep_->backing->times_Z_power(k));
  return from_window(rep_->f, rep_->val - k, rep_->coeffs, rep_->known - k);
}

Laurent Laurent::inverse() const {
  if (rep_->backing) {
    if (rep_->backing->is_zero()) throw std::domain_error("inverse of zero");
    return exact(rep_->backing->inverse());
  }
  const std::int64_t v = valuation();
  const std::int64_t P = rep_->known - v;
  const FieldPtr& F = rep_->f;
  const auto& c = rep_->coeffs;
  auto cc = [&](std::int64_t i) { return i < static_cast<std::int64_t>(c.size()) ? c[static_cast<std::size_t>(i)] : Fq{0}; };
  Fq inv0 = F->inv(c[0]);
  std::vector<Fq> d(static_cast<std::size_t>(P), Fq{0});
  for (std::int64_t k = 0; k < P; ++k) {
    Fq s = k == 0 ? F->one() : Fq{0};
    for (std::int64_t i = 1; i <= k; ++i) s = F->sub(s, F->mul(cc(i), d[static_cast<std::size_t>(k - i)]));
    d[static_cast<std::size_t>(k)] = F->mul(s, inv0);
  }
  return from_window(F, -v, std::move(d), -v + P);
}

Laurent operator+(const Laurent& a, const Laurent& b) {
  if (a.is_exact() && b.is_exact()) return Laurent::exact(*a.backing() + *b.backing());
  if (a.is_exact_zero()) return b;
  if (b.is_exact_zero()) return a;
  const FieldPtr& F = a.field();
  const std::int64_t known = std::min(a.known_bound(), b.known_bound());
  const std::int64_t start = std::min(a.val_lower_bound(), b.val_lower_bound());
  if (start >= known) return Laurent::from_window(F, known, {}, known);
  auto wa = a.window(start, known);
  auto wb = b.window(start, known);
  for (std::size_t i = 0; i < wa.size(); ++i) wa[i] = F->add(wa[i], wb[i]);
  return Laurent::from_window(F, start, std::move(wa), known);
}

Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }

Laurent operator*(const Laurent& a, const Laurent& b) {
  if (a.is_exact() && b.is_exact()) return Laurent::exact(*a.backing() * *b.backing());
  if (a.is_exact_zero()) return a;
  if (b.is_exact_zero()) return b;
  const FieldPtr& F = a.field();
  const std::int64_t alo = a.val_lower_bound(), blo = b.val_lower_bound();
  const std::int64_t known = std::min(sat_add(alo, b.known_bound()), sat_add(blo, a.known_bound()));
  const std::int64_t start = alo + blo;
  if (start >= known) return Laurent::from_window(F, known, {}, known);
  const std::int64_t len = known - start;
  auto wa = a.window(alo, alo + len);
  auto wb = b.window(blo, blo + len);
  std::vector<Fq> out(static_cast<std::size_t>(len), Fq{0});
  for (std::int64_t i = 0; i < len; ++i) {
    if (wa[static_cast<std::size_t>(i)].index == 0) continue;
    for (std::int64_t j = 0; i + j < len; ++j)
      out[static_cast<std::size_t>(i + j)] =
          F->add(out[static_cast<std::size_t>(i + j)], F->mul(wa[static_cast<std::size_t>(i)], wb[static_cast<std::size_t>(j)]));
  }
  return Laurent::from_window(F, start, std::move(out), known);
}

bool Laurent::agrees_with(const Laurent& other, std::int64_t upto) const {
  std::int64_t lo = std::min(val_lower_bound(), other.val_lower_bound());
  if (lo >= upto) return true;
  return window(lo, upto) == other.window(lo, upto);
}

std::string Laurent::str(std::int64_t max_terms) const {
  if (is_exact_zero()) return "0";
  if (is_exact() && rep_->backing->is_polynomial()) return rep_->backing->str();
  std::string out;
  std::int64_t shown = 0;
  std::int64_t k = rep_->val;
  const std::int64_t stop = std::min(rep_->known, rep_->val + 4 * max_terms);
  for (; k < stop && shown < max_terms; ++k) {
    Fq c = coef(k);
    if (c.index == 0) continue;
    if (!out.empty()) out += " + ";
    std::string cs = c == rep_->f->one() ? "" : std::to_string(c.index) + "*";
    if (k == 0) out += c == rep_->f->one() ? "1" : std::to_string(c.index);
    else out += cs + (k == -1 ? std::string("Z") : "Z^" + std::to_string(-k));
    ++shown;
  }
  if (out.empty()) out = "0";
  if (is_exact()) out += " + ...";
  else out += " + O(Z^" + std::to_string(-rep_->known) + ")";
  return out;
}

}  // namespace ffapprox
