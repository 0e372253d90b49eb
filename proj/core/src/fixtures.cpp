#include "ffapprox/fixtures.hpp"

#include "ffapprox/errors.hpp"

namespace ffapprox::fixtures {

Laurent alpha_quad_series(const FieldPtr& f, std::int64_t prec) {
  const Field& F = *f;
  // a = w (1 - a^2), so a_k = [k == 1] - sum_{i+j=k-1} a_i a_j.
  std::vector<Fq> a(static_cast<std::size_t>(prec) + 1, F.zero());
  for (std::int64_t k = 1; k <= prec; ++k) {
    Fq s = k == 1 ? F.one() : F.zero();
    for (std::int64_t i = 1; i + 1 <= k - 1; ++i)
      s = F.sub(s, F.mul(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(k - 1 - i)]));
    a[static_cast<std::size_t>(k)] = s;
  }
  // exponents 1..prec
  return Laurent::truncated(f, 1, std::vector<Fq>(a.begin() + 1, a.end()), prec);
}

Laurent liouville_series(const FieldPtr& f, int max_i, std::int64_t prec) {
  std::vector<std::int64_t> ex;
  std::int64_t fact = 1;
  for (int i = 1; i <= max_i; ++i) {
    fact *= i;
    ex.push_back(fact);
    if (fact > (std::int64_t{1} << 40)) throw InputError("liouville: exponent too large");
  }
  if (prec == 0) {
    const std::int64_t top = ex.back();
    std::vector<Fq> num(static_cast<std::size_t>(top) + 1, f->zero());
    for (auto e : ex) num[static_cast<std::size_t>(top - e)] = f->one();
    return Laurent::exact(RatFunc(Poly(f, std::move(num)), Poly::monomial(f, f->one(), top)));
  }
  std::vector<Fq> c(static_cast<std::size_t>(prec), f->zero());
  for (auto e : ex)
    if (e <= prec) c[static_cast<std::size_t>(e - 1)] = f->one();
  return Laurent::truncated(f, 1, std::move(c), prec);
}

LaurentMatrix one_by_one(const Laurent& x) {
  LaurentMatrix A(x.field(), 1, 1);
  A.at(0, 0) = x;
  return A;
}

LaurentMatrix alpha_quad(const FieldPtr& f, std::int64_t prec) { return one_by_one(alpha_quad_series(f, prec)); }

LaurentMatrix liouville(const FieldPtr& f, std::int64_t prec) {
  int max_i = 1;
  std::int64_t fact = 1;
  while (fact * (max_i + 1) <= prec) fact *= ++max_i;
  return one_by_one(liouville_series(f, max_i, prec));
}

LaurentMatrix inv_Z(const FieldPtr& f) { return one_by_one(Laurent::monomial(f, f->one(), -1)); }

LaurentMatrix diag_Z(const FieldPtr& f) {
  LaurentMatrix B(f, 2, 2);
  B.at(0, 0) = Laurent::monomial(f, f->one(), 1);
  B.at(0, 1) = Laurent::zero(f);
  B.at(1, 0) = Laurent::zero(f);
  B.at(1, 1) = Laurent::monomial(f, f->one(), -1);
  return B;
}

Fq random_element(const Field& F, Rng& rng) { return F.element(static_cast<std::uint32_t>(rng() % F.q())); }

Poly random_poly(const FieldPtr& f, std::int64_t max_deg, Rng& rng) {
  std::vector<Fq> c;
  for (std::int64_t k = 0; k <= max_deg; ++k) c.push_back(random_element(*f, rng));
  return Poly(f, std::move(c));
}

Laurent random_series(const FieldPtr& f, std::int64_t prec, Rng& rng) {
  std::vector<Fq> c;
  for (std::int64_t k = 0; k < prec; ++k) c.push_back(random_element(*f, rng));
  // Leading coefficient nonzero keeps |x| = q^{-1}.
  if (!c.empty() && c[0] == f->zero()) c[0] = f->one();
  return Laurent::truncated(f, 1, std::move(c), prec);
}

RatFunc random_ratfunc(const FieldPtr& f, std::int64_t max_deg, Rng& rng) {
  Poly den = random_poly(f, max_deg, rng);
  if (den.is_zero()) den = Poly::one(f);
  return RatFunc(random_poly(f, max_deg, rng), den);
}

LaurentMatrix random_series_matrix(const FieldPtr& f, std::size_t m, std::size_t n, std::int64_t prec, Rng& rng) {
  LaurentMatrix A(f, m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) A.at(i, j) = random_series(f, prec, rng);
  return A;
}

LaurentMatrix random_lattice(const FieldPtr& f, std::size_t d, std::int64_t max_deg, Rng& rng,
                             std::int64_t max_shift) {
  for (;;) {
    LaurentMatrix B(f, d, d);
    for (std::size_t i = 0; i < d; ++i) {
      const std::int64_t sh = max_shift > 0 ? static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(max_shift + 1)) : 0;
      for (std::size_t j = 0; j < d; ++j) B.at(i, j) = Laurent::from_poly(random_poly(f, max_deg, rng)).times_Z_power(-sh);
    }
    if (!determinant(B).is_exact_zero()) return B;
  }
}

}  // namespace ffapprox::fixtures
