#include <gtest/gtest.h>

#include "../support/testgen.hpp"
#include "ffapprox/errors.hpp"
#include "ffapprox/linalg.hpp"
#include "ffapprox/logval.hpp"
#include "ffapprox/laurent.hpp"
#include "ffapprox/poly.hpp"

using namespace ffapprox;
using ffapprox::testing::Rng;

namespace {

Poly P(const FieldPtr& f, std::vector<std::uint32_t> c) {
  std::vector<Fq> v;
  for (auto x : c) v.push_back(f->from_int(x));
  return Poly(f, v);
}

}  // namespace

TEST(Field, PrimeArithmetic) {
  FieldPtr f = Field::prime(5);
  EXPECT_EQ(f->q(), 5u);
  EXPECT_EQ(f->add(f->from_int(3), f->from_int(4)), f->from_int(2));
  EXPECT_EQ(f->mul(f->from_int(3), f->from_int(4)), f->from_int(2));
  EXPECT_EQ(f->inv(f->from_int(2)), f->from_int(3));
  EXPECT_EQ(f->from_int(-1), f->from_int(4));
  EXPECT_THROW(f->inv(f->zero()), std::domain_error);
}

TEST(Field, ExtensionAxiomsExhaustive) {
  FieldPtr f = Field::make(FieldSpec{2, 2, {1, 1, 1}});
  ASSERT_EQ(f->q(), 4u);
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b) {
      Fq x{a}, y{b};
      EXPECT_EQ(f->mul(x, y), f->mul(y, x));
      EXPECT_EQ(f->sub(f->add(x, y), y), x);
      if (b) {
        EXPECT_EQ(f->mul(f->div(x, y), y), x);
      }
    }
  // one has index p^{e-1}; the smallest unit is index 1
  EXPECT_EQ(f->one().index, 2u);
  EXPECT_EQ(f->smallest_unit().index, 1u);
  // multiplicative group is cyclic of order 3
  for (std::uint32_t a = 1; a < 4; ++a) {
    Fq x{a};
    EXPECT_EQ(f->mul(f->mul(x, x), x), f->one());
  }
}

TEST(Field, RejectsBadSpecs) {
  EXPECT_THROW(Field::make(FieldSpec{4, 1, {}}), InputError);
  EXPECT_THROW(Field::make(FieldSpec{2, 2, {1, 0, 1}}), InputError);  // Z^2+1 = (Z+1)^2
  EXPECT_THROW(Field::make(FieldSpec{65537, 2, {3, 0, 1}}), InputError);
}

TEST(Poly, SpecExamples) {
  FieldPtr f = Field::prime(2);
  Poly z1 = P(f, {1, 1});
  EXPECT_EQ(z1 * z1, P(f, {1, 0, 1}));
  auto [q, r] = divmod(P(f, {0, 1, 0, 1}), P(f, {0, 0, 1}));
  EXPECT_EQ(q, P(f, {0, 1}));
  EXPECT_EQ(r, P(f, {0, 1}));
  EXPECT_EQ(gcd(P(f, {1, 0, 1}), z1), z1);
  EXPECT_EQ(Poly(f).degree(), -1);
  EXPECT_THROW(divmod(z1, Poly(f)), std::domain_error);
}

TEST(Poly, DivmodRandomized) {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    FieldPtr f = ffapprox::testing::q23(rng);
    Poly a = fixtures::random_poly(f, ffapprox::testing::pick(rng, 0, 9), rng);
    Poly b = fixtures::random_poly(f, ffapprox::testing::pick(rng, 0, 5), rng);
    if (b.is_zero()) continue;
    auto [q, r] = divmod(a, b);
    EXPECT_EQ(q * b + r, a);
    EXPECT_LT(r.degree(), b.degree());
  }
}

TEST(RatFunc, NormalizesAndFrac) {
  FieldPtr f = Field::prime(3);
  RatFunc x(P(f, {2, 2}), P(f, {2, 0, 2}));  // 2(Z+1) / 2(Z^2+1)
  EXPECT_TRUE(x.den().is_monic());
  EXPECT_EQ(x.valuation(), 1);
  RatFunc y(P(f, {1, 0, 0, 1}), P(f, {0, 1}));  // (Z^3+1)/Z
  EXPECT_EQ(y.poly_part(), P(f, {0, 0, 1}));
  EXPECT_EQ(y.frac(), RatFunc(P(f, {1}), P(f, {0, 1})));
  EXPECT_THROW(RatFunc(P(f, {1}), Poly(f)), std::exception);
}

TEST(Laurent, ExpandPolynomial) {
  FieldPtr f = Field::prime(2);
  Laurent x = Laurent::from_poly(P(f, {1, 0, 0, 1}));
  EXPECT_EQ(x.valuation(), -3);
  std::vector<Fq> w = x.window(-3, 1);
  EXPECT_EQ(w, (std::vector<Fq>{Fq{1}, Fq{0}, Fq{0}, Fq{1}}));
  EXPECT_EQ(x.abs(), LogVal(3));
  EXPECT_TRUE(Laurent::zero(f).is_exact_zero());
  EXPECT_TRUE(Laurent::zero(f).abs().is_neg_inf());
}

TEST(Laurent, InverseOfZPlusOne) {
  FieldPtr f = Field::prime(2);
  Laurent x = Laurent::exact(RatFunc(Poly::one(f), P(f, {1, 1})));
  for (std::int64_t k = 1; k <= 40; ++k) EXPECT_EQ(x.coef(k), f->one());
  EXPECT_EQ(x.coef(0), f->zero());
  // (Z+1) * partial sum = 1 + O(Z^{-prec})
  Laurent part = Laurent::from_ratfunc(RatFunc(Poly::one(f), P(f, {1, 1})), 30);
  Laurent prod = Laurent::from_poly(P(f, {1, 1})) * part;
  EXPECT_EQ(prod.coef(0), f->one());
  for (std::int64_t k = 1; k < 28; ++k) EXPECT_EQ(prod.coef(k), f->zero());
}

TEST(Laurent, AbsAndDistance) {
  FieldPtr f = Field::prime(2);
  Laurent a = Laurent::monomial(f, f->one(), -2) + Laurent::monomial(f, f->one(), -5);
  EXPECT_EQ(a.abs(), LogVal(-2));
  Laurent b = Laurent::from_poly(P(f, {1, 0, 1})) + Laurent::monomial(f, f->one(), -3);
  EXPECT_EQ(b.dist_to_Rv(), LogVal(-3));
  EXPECT_EQ(Laurent::monomial(f, f->one(), -1).dist_to_Rv(), LogVal(-1));
  EXPECT_TRUE(Laurent::monomial(f, f->one(), 5).dist_to_Rv().is_neg_inf());
}

TEST(Laurent, TruncatedRaisesPastPrecision) {
  FieldPtr f = Field::prime(2);
  Laurent t = Laurent::truncated(f, 1, {Fq{1}, Fq{0}, Fq{1}}, 3);
  EXPECT_EQ(t.known_bound(), 4);
  EXPECT_EQ(t.coef(3), Fq{1});
  EXPECT_THROW(t.coef(4), PrecisionExhausted);
  Laurent z = Laurent::truncated(f, 1, {}, 5);  // known to vanish up to w^5
  EXPECT_FALSE(z.has_valuation());
  EXPECT_THROW(z.valuation(), PrecisionExhausted);
}

TEST(Laurent, ArithmeticMatchesRatFunc) {
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    FieldPtr f = ffapprox::testing::q23(rng);
    RatFunc a = fixtures::random_ratfunc(f, 4, rng), b = fixtures::random_ratfunc(f, 4, rng);
    if (b.is_zero()) continue;
    Laurent la = Laurent::from_ratfunc(a, 50), lb = Laurent::from_ratfunc(b, 50);
    EXPECT_TRUE((la * lb).agrees_with(Laurent::exact(a * b), 30));
    EXPECT_TRUE((la + lb).agrees_with(Laurent::exact(a + b), 30));
    EXPECT_TRUE((la / lb).agrees_with(Laurent::exact(a / b), 20));
  }
}

TEST(LogVal, OrderingAndParse) {
  EXPECT_LT(LogVal::neg_inf(), LogVal(-1000));
  EXPECT_EQ(LogVal(Rational(3, 2)) + LogVal(Rational(1, 2)), LogVal(2));
  EXPECT_TRUE((LogVal::neg_inf() + LogVal(5)).is_neg_inf());
  EXPECT_EQ(LogVal::parse("-7/3"), LogVal(Rational(-7, 3)));
  EXPECT_EQ(LogVal::parse(LogVal::neg_inf().str()), LogVal::neg_inf());
  EXPECT_EQ(LogVal(Rational(4, 2)).str(), "2");
  EXPECT_THROW(LogVal::neg_inf().value(), std::logic_error);
  EXPECT_THROW(LogVal::parse("1.5"), InputError);
}

TEST(Rational, FloorCeil) {
  EXPECT_EQ(floor_q(Rational(-7, 2)), -4);
  EXPECT_EQ(ceil_q(Rational(-7, 2)), -3);
  EXPECT_EQ(floor_q(Rational(7, 2)), 3);
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_THROW(parse_rational("x"), InputError);
}

// Brute force: the affine solution set of a random system equals the set of
// all x with A x = b.
TEST(Linalg, SolveMatchesBruteForce) {
  Rng rng(13);
  for (int t = 0; t < 60; ++t) {
    FieldPtr f = ffapprox::testing::q23(rng);
    const Field& F = *f;
    const std::size_t rows = ffapprox::testing::pick(rng, 1, 4), cols = ffapprox::testing::pick(rng, 1, 5);
    std::vector<FqVec> A(rows, FqVec(cols));
    FqVec b(rows);
    for (auto& r : A)
      for (auto& x : r) x = t % 3 == 0 && rng() % 2 ? F.zero() : fixtures::random_element(F, rng);
    for (auto& x : b) x = fixtures::random_element(F, rng);
    AffineSpace S = solve_affine(F, A, cols, b);
    std::size_t total = 1, count = 0;
    for (std::size_t i = 0; i < cols; ++i) total *= F.q();
    FqVec lexmin;
    for (std::size_t code = 0; code < total; ++code) {
      FqVec x(cols);
      std::size_t c = code;
      for (std::size_t i = cols; i-- > 0;) {
        x[i] = Fq{static_cast<std::uint32_t>(c % F.q())};
        c /= F.q();
      }
      bool ok = true;
      for (std::size_t r = 0; r < rows && ok; ++r) {
        Fq s = F.zero();
        for (std::size_t i = 0; i < cols; ++i) s = F.add(s, F.mul(A[r][i], x[i]));
        ok = s == b[r];
      }
      if (ok) {
        if (count == 0) lexmin = x;
        ++count;
      }
    }
    ASSERT_EQ(S.consistent, count > 0);
    if (!count) continue;
    std::size_t expect = 1;
    for (std::size_t i = 0; i < S.dim(); ++i) expect *= F.q();
    EXPECT_EQ(expect, count);
    // code order above is the lexicographic order
    EXPECT_EQ(*lex_min_element(S), lexmin);
  }
}

TEST(Linalg, PolyUnknownsOrdering) {
  PolyUnknowns u({2, -1, 1});
  EXPECT_EQ(u.total(), 5u);
  EXPECT_EQ(u.index(0, 2), 0u);  // highest degree first
  EXPECT_EQ(u.index(0, 0), 2u);
  EXPECT_EQ(u.index(2, 1), 3u);
}
