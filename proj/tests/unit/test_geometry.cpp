#include <gtest/gtest.h>

#include "../support/testgen.hpp"
#include "ffapprox/errors.hpp"
#include "ffapprox/fixtures.hpp"
#include "ffapprox/geometry.hpp"
#include "ffapprox/oracles.hpp"

using namespace ffapprox;
using ffapprox::testing::pick;
using ffapprox::testing::Rng;

namespace {

FieldPtr F2() { return Field::prime(2); }

Laurent mono(const FieldPtr& f, std::int64_t k) { return Laurent::monomial(f, f->one(), k); }

LaurentMatrix mat2(const FieldPtr& f, Laurent a, Laurent b, Laurent c, Laurent d) {
  LaurentMatrix M(f, 2, 2);
  M.at(0, 0) = a;
  M.at(0, 1) = b;
  M.at(1, 0) = c;
  M.at(1, 1) = d;
  return M;
}

}  // namespace

TEST(Norms, WeightedNormExamples) {
  FieldPtr f = F2();
  std::vector<std::int64_t> r12{1, 2}, r2{2}, r1{1}, r11{1, 1};
  VecKv a{mono(f, -3), mono(f, -4)};
  EXPECT_EQ(weighted_norm(a, r12), LogVal(-2));
  VecKv z{Laurent::zero(f), Laurent::zero(f)};
  EXPECT_TRUE(weighted_norm(z, r12).is_neg_inf());
  VecKv b{mono(f, 3)};
  EXPECT_EQ(weighted_norm(b, r2), LogVal(Rational(3, 2)));
  VecKv c{mono(f, 1) + mono(f, -2)};
  EXPECT_EQ(weighted_dist(c, r1), LogVal(-2));
  VecKv d{mono(f, -1), mono(f, 2)};
  EXPECT_EQ(weighted_dist(d, r11), LogVal(-1));
  VecKv e{mono(f, 4), Laurent::from_poly(Poly::one(f))};
  EXPECT_TRUE(weighted_dist(e, r11).is_neg_inf());
}

TEST(Covol, Examples) {
  FieldPtr f = F2();
  EXPECT_EQ(covol(LaurentMatrix::identity(f, 2)), LogVal(-2));
  EXPECT_EQ(covol(fixtures::diag_Z(f)), LogVal(-2));
  Laurent one = mono(f, 0), zero = Laurent::zero(f);
  EXPECT_EQ(covol(mat2(f, mono(f, 1), zero, zero, one)), LogVal(-1));
  EXPECT_EQ(covol_Rv_log(3), LogVal(-3));
}

TEST(Minima, Examples) {
  FieldPtr f = F2();
  Laurent one = mono(f, 0), zero = Laurent::zero(f);
  MinimaResult a = successive_minima(LaurentMatrix::identity(f, 2));
  EXPECT_EQ(a.lambda_logs, (std::vector<LogVal>{LogVal(0), LogVal(0)}));
  EXPECT_TRUE(a.product_ok);
  MinimaResult b = successive_minima(fixtures::diag_Z(f));
  EXPECT_EQ(b.lambda_logs, (std::vector<LogVal>{LogVal(-1), LogVal(1)}));
  EXPECT_EQ(b.covol_log, LogVal(-2));
  // columns (1,0) and (Z^{-1},1)
  MinimaResult c = successive_minima(mat2(f, one, mono(f, -1), zero, one));
  EXPECT_EQ(c.lambda_logs, (std::vector<LogVal>{LogVal(0), LogVal(0)}));
}

TEST(Minima, RealizingVectorsAreIndependent) {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    FieldPtr f = ffapprox::testing::q23(rng);
    const auto d = static_cast<std::size_t>(pick(rng, 2, 3));
    LaurentMatrix B = fixtures::random_lattice(f, d, pick(rng, 0, 3), rng, 1);
    MinimaResult r = successive_minima(B);
    std::vector<PolyVec> cs;
    for (std::size_t k = 0; k < d; ++k) {
      EXPECT_EQ(sup_norm(r.vectors[k].vec), r.lambda_logs[k]);
      cs.push_back(r.vectors[k].coords);
    }
    EXPECT_EQ(oracle::rank_over_K(f, cs), d);
    for (std::size_t k = 1; k < d; ++k) EXPECT_LE(r.lambda_logs[k - 1], r.lambda_logs[k]);
  }
}

TEST(Minima, OracleAgreement) {
  Rng rng(22);
  int compared = 0;
  for (int t = 0; t < 40; ++t) {
    FieldPtr f = ffapprox::testing::q23(rng);
    LaurentMatrix B = fixtures::random_lattice(f, 2, pick(rng, 0, 2), rng, 1);
    auto ref = oracle::minima(B, 1u << 16);
    if (ref.empty()) continue;
    ++compared;
    EXPECT_EQ(ref, successive_minima(B).lambda_logs);
  }
  EXPECT_GT(compared, 20);
}

TEST(Systole, Examples) {
  FieldPtr f = F2();
  WeightedNormContext ctx({1}, {1});
  EXPECT_EQ(rs_systole(LaurentMatrix::identity(f, 2), ctx).value, LogVal(0));
  EXPECT_EQ(rs_systole(fixtures::diag_Z(f), ctx).value, LogVal(-1));
  Laurent one = mono(f, 0), zero = Laurent::zero(f);
  EXPECT_EQ(rs_systole(mat2(f, one, mono(f, -1), zero, one), ctx).value, LogVal(0));
}

TEST(Systole, OracleAgreementWeighted) {
  Rng rng(23);
  FieldPtr f = F2();
  int compared = 0;
  for (int t = 0; t < 30; ++t) {
    WeightedNormContext ctx = t % 2 ? WeightedNormContext({1}, {1}) : WeightedNormContext({2}, {1, 1});
    LaurentMatrix B = fixtures::random_lattice(f, ctx.d(), t % 2 ? 2 : 1, rng, 1);
    auto ref = oracle::systole(B, ctx, 1u << 16);
    if (!ref) continue;
    ++compared;
    EXPECT_EQ(*ref, rs_systole(B, ctx).value);
  }
  EXPECT_GT(compared, 10);
}

TEST(Dirichlet, Examples) {
  FieldPtr f = F2();
  // A = 0
  LaurentMatrix Z0(f, 1, 2);
  Z0.at(0, 0) = Laurent::zero(f);
  Z0.at(0, 1) = Laurent::zero(f);
  std::vector<std::int64_t> rp{2}, sp{1, 1};
  PolyVec y0 = dirichlet_solve(Z0, rp, sp);
  EXPECT_FALSE(is_zero(y0));
  EXPECT_TRUE(rdist(Z0.apply(y0), WeightedNormContext({2}, {1, 1})).is_neg_inf());
  // alpha_quad, r' = s' = 3, against brute force over deg y <= 3
  LaurentMatrix A = fixtures::alpha_quad(f, 256);
  std::vector<std::int64_t> three{3};
  PolyVec y = dirichlet_solve(A, three, three);
  WeightedNormContext c11({1}, {1});
  EXPECT_LE(rdist(A.apply(y), c11), LogVal(-3));
  EXPECT_LE(poly_weighted_norm(y, c11.s), LogVal(3));
  // 1/Z, r' = s' = 2: y = Z has frac 0
  std::vector<std::int64_t> two{2};
  PolyVec yi = dirichlet_solve(fixtures::inv_Z(f), two, two);
  EXPECT_LE(rdist(fixtures::inv_Z(f).apply(yi), c11), LogVal(-2));
}

TEST(Dirichlet, WeightedRandom) {
  Rng rng(24);
  for (const auto& ctx : ffapprox::testing::weight_shapes(4)) {
    FieldPtr f = ffapprox::testing::q23(rng);
    LaurentMatrix A = fixtures::random_series_matrix(f, ctx.m(), ctx.n(), 64, rng);
    for (std::int64_t alpha = 1; alpha <= 4; ++alpha) {
      PolyVec y = dirichlet_weighted(A, alpha, ctx);
      EXPECT_FALSE(is_zero(y));
      EXPECT_LE(rdist(A.apply(y), ctx), LogVal(-alpha));
      EXPECT_LE(poly_weighted_norm(y, ctx.s), LogVal(alpha));
      EXPECT_TRUE(dirichlet_check(A, y, alpha, ctx));
    }
    // genus 0: alpha must be positive
    EXPECT_THROW(dirichlet_weighted(A, 0, ctx), PreconditionError);
  }
}

TEST(Dirichlet, WeightsR11S2Bounds) {
  // r = (1,1), s = (2), alpha = 1: |<A_i y>| <= q^{-1}, |y| <= q^2
  Rng rng(25);
  FieldPtr f = F2();
  WeightedNormContext ctx({1, 1}, {2});
  LaurentMatrix A = fixtures::random_series_matrix(f, 2, 1, 64, rng);
  PolyVec y = dirichlet_weighted(A, 1, ctx);
  VecKv Ay = A.apply(y);
  EXPECT_LE(Ay[0].dist_to_Rv(), LogVal(-1));
  EXPECT_LE(Ay[1].dist_to_Rv(), LogVal(-1));
  EXPECT_LE(y[0].degree(), 2);
}

TEST(Pseudocompound, Examples) {
  EXPECT_EQ(pseudocompound(std::vector<std::int64_t>{1, -1}), (std::vector<std::int64_t>{-1, 1}));
  EXPECT_EQ(pseudocompound(std::vector<std::int64_t>{2, 0, 1}), (std::vector<std::int64_t>{1, 3, 2}));
  EXPECT_EQ(pseudocompound(std::vector<std::int64_t>{0, 0, 0}), (std::vector<std::int64_t>{0, 0, 0}));
}

TEST(Kappa, Constants) {
  KappaConstants k = kappa_constants(WeightedNormContext({1}, {1}));
  EXPECT_EQ(k.beta, Rational(1));
  EXPECT_EQ(k.kappa1, Rational(5));
  EXPECT_EQ(k.kappa2, Rational(1));
  EXPECT_EQ(k.kappa3, Rational(2));
  EXPECT_EQ(k.kappa4, Rational(0));
  for (std::size_t d = 2; d < 7; ++d) EXPECT_EQ(beta_d(d), Rational(1));
  for (const auto& ctx : ffapprox::testing::weight_shapes(4)) {
    EXPECT_EQ(best_approx_product_bound(ctx), Rational(2));
    bool s_const = true;
    for (auto x : ctx.s) s_const = s_const && x == ctx.s[0];
    if (s_const && ctx.n() == 1) {
      EXPECT_EQ(kappa_constants(ctx).kappa4, Rational(0));
    }
  }
}

TEST(Transfer, AlphaQuadConvergents) {
  FieldPtr f = F2();
  WeightedNormContext ctx({1}, {1});
  LaurentMatrix A = fixtures::alpha_quad(f, 512);
  int ok = 0;
  for (std::int64_t k = 1; k <= 8; ++k) {
    auto [dv, y] = min_dist_on_box(A, ctx, {k});
    ASSERT_LE(dv, LogVal(-1 - k));
    try {
      TransferResult t = transfer(A, y, -1, k, ctx);
      EXPECT_FALSE(is_zero(t.x));
      EXPECT_LE(t.x_rnorm, LogVal(Rational(2 + k)));
      EXPECT_LE(t.tAx_sdist, LogVal(Rational(5 - 1 - (2 + k))));
      EXPECT_TRUE(t.ok);
      ++ok;
    } catch (const PreconditionError&) {
    }
  }
  EXPECT_GT(ok, 4);
}

TEST(Transfer, ZeroMatrixAndPreconditions) {
  FieldPtr f = F2();
  WeightedNormContext ctx({1}, {1});
  LaurentMatrix Z0 = fixtures::one_by_one(Laurent::zero(f));
  PolyVec y{Poly::one(f)};
  TransferResult t = transfer(Z0, y, -1, 1, ctx);
  EXPECT_FALSE(is_zero(t.x));
  EXPECT_TRUE(t.tAx_sdist.is_neg_inf());
  EXPECT_THROW(transfer(Z0, y, 0, 1, ctx), PreconditionError);
  EXPECT_THROW(transfer(Z0, y, -1, 0, ctx), PreconditionError);
  EXPECT_THROW(transfer(Z0, PolyVec{Poly(f)}, -1, 1, ctx), PreconditionError);
  // y = 1 against alpha_quad: dist -1 > eps - Y
  EXPECT_THROW(transfer(fixtures::alpha_quad(f), y, -1, 1, ctx), PreconditionError);
}

TEST(Weights, Validation) {
  EXPECT_THROW(WeightedNormContext({1, 1}, {1}).validate(), InputError);
  EXPECT_THROW(WeightedNormContext({0}, {0}).validate(), InputError);
  WeightedNormContext c({2, 4}, {3, 3});
  EXPECT_EQ(c.lcm_r(), 4);
  EXPECT_EQ(c.min_s(), 3);
  EXPECT_EQ(c.swapped().r, (std::vector<std::int64_t>{3, 3}));
}
