#include <array>
#include <functional>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "ffapprox/badset.hpp"
#include "ffapprox/bestapprox.hpp"
#include "ffapprox/dynamics.hpp"
#include "ffapprox/errors.hpp"
#include "ffapprox/fixtures.hpp"
#include "ffapprox/oracles.hpp"
#include "ffapprox/parallel.hpp"

namespace ffapprox::cli {

namespace {

using fixtures::Rng;
enum class Outcome { kPass, kFail, kSkip };

struct Family {
  const char* name;
  std::size_t count;
  std::function<Outcome(Rng&)> run;
};

FieldPtr small_field(Rng& rng) {
  static const std::array<FieldSpec, 6> specs{FieldSpec{2, 1, {}}, FieldSpec{3, 1, {}}, FieldSpec{5, 1, {}},
                                              FieldSpec{2, 2, {1, 1, 1}}, FieldSpec{2, 3, {1, 1, 0, 1}},
                                              FieldSpec{3, 2, {1, 0, 1}}};
  return Field::make(specs[rng() % specs.size()]);
}

FieldPtr q23(Rng& rng) { return Field::prime(rng() % 2 ? 2 : 3); }

std::int64_t pick(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Shapes with |r| = |s|.
WeightedNormContext random_weights(Rng& rng, std::int64_t max_sum) {
  static const std::array<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>, 7> w{
      std::pair{std::vector<std::int64_t>{1}, std::vector<std::int64_t>{1}},
      {{2}, {1, 1}},
      {{1, 1}, {2}},
      {{2}, {2}},
      {{1, 2}, {3}},
      {{3}, {1, 2}},
      {{2, 2}, {1, 3}}};
  for (;;) {
    const auto& c = w[rng() % w.size()];
    WeightedNormContext ctx(c.first, c.second);
    if (ctx.sum_r() <= max_sum) return ctx;
  }
}

Outcome check(bool ok) { return ok ? Outcome::kPass : Outcome::kFail; }

std::vector<Family> families() {
  std::vector<Family> fs;
  fs.push_back({"field_axioms", 40, [](Rng& rng) {
                  FieldPtr f = small_field(rng);
                  const Field& F = *f;
                  for (int t = 0; t < 20; ++t) {
                    Fq a = fixtures::random_element(F, rng), b = fixtures::random_element(F, rng),
                       c = fixtures::random_element(F, rng);
                    if (F.add(F.add(a, b), c) != F.add(a, F.add(b, c))) return Outcome::kFail;
                    if (F.mul(a, F.add(b, c)) != F.add(F.mul(a, b), F.mul(a, c))) return Outcome::kFail;
                    if (F.mul(a, b) != F.mul(b, a) || F.add(F.sub(a, b), b) != a) return Outcome::kFail;
                    if (a != F.zero() && F.mul(a, F.inv(a)) != F.one()) return Outcome::kFail;
                  }
                  return Outcome::kPass;
                }});
  fs.push_back({"poly_divmod_gcd", 60, [](Rng& rng) {
                  FieldPtr f = small_field(rng);
                  Poly a = fixtures::random_poly(f, pick(rng, 0, 8), rng);
                  Poly b = fixtures::random_poly(f, pick(rng, 0, 5), rng);
                  if (b.is_zero()) return Outcome::kSkip;
                  auto [qq, r] = divmod(a, b);
                  if (!(qq * b + r == a) || r.degree() >= b.degree()) return Outcome::kFail;
                  Poly g = gcd(a, b);
                  return check(divmod(a, g).second.is_zero() && divmod(b, g).second.is_zero());
                }});
  fs.push_back({"laurent_expansion", 40, [](Rng& rng) {
                  FieldPtr f = small_field(rng);
                  RatFunc x = fixtures::random_ratfunc(f, pick(rng, 1, 5), rng);
                  Laurent lx = Laurent::exact(x);
                  Laurent back = lx * Laurent::from_poly(x.den()) - Laurent::from_poly(x.num());
                  for (auto c : back.window(-10, 40))
                    if (c != f->zero()) return Outcome::kFail;
                  return check(Laurent::from_ratfunc(x, 40).agrees_with(lx, 40));
                }});
  fs.push_back({"minkowski_identity", 60, [](Rng& rng) {
                  FieldPtr f = q23(rng);
                  LaurentMatrix B = fixtures::random_lattice(f, static_cast<std::size_t>(pick(rng, 2, 3)), pick(rng, 0, 4),
                                                             rng, 2);
                  MinimaResult r = successive_minima(B);
                  LogVal sum(0);
                  for (const auto& l : r.lambda_logs) sum = sum + l;
                  return check(r.product_ok && sum == LogVal(static_cast<std::int64_t>(B.rows())) + r.covol_log);
                }});
  fs.push_back({"minima_oracle", 30, [](Rng& rng) {
                  FieldPtr f = q23(rng);
                  const std::size_t d = f->q() == 2 ? static_cast<std::size_t>(pick(rng, 2, 3)) : 2;
                  LaurentMatrix B = fixtures::random_lattice(f, d, d == 2 ? 2 : 1, rng, 1);
                  auto ref = oracle::minima(B, 1u << 18);
                  if (ref.empty()) return Outcome::kSkip;
                  return check(ref == successive_minima(B).lambda_logs);
                }});
  fs.push_back({"systole_oracle", 20, [](Rng& rng) {
                  FieldPtr f = Field::prime(2);
                  const bool two = rng() % 2;
                  WeightedNormContext ctx = two ? WeightedNormContext({1}, {1}) : WeightedNormContext({2}, {1, 1});
                  LaurentMatrix B = fixtures::random_lattice(f, ctx.d(), two ? 2 : 1, rng, 1);
                  auto ref = oracle::systole(B, ctx, 1u << 18);
                  if (!ref) return Outcome::kSkip;
                  return check(*ref == rs_systole(B, ctx).value);
                }});
  fs.push_back({"dirichlet_postconditions", 40, [](Rng& rng) {
                  FieldPtr f = q23(rng);
                  WeightedNormContext ctx = random_weights(rng, 4);
                  LaurentMatrix A = fixtures::random_series_matrix(f, ctx.m(), ctx.n(), 64, rng);
                  const std::int64_t alpha = pick(rng, 1, 4);
                  PolyVec y = dirichlet_weighted(A, alpha, ctx);
                  return check(!is_zero(y) && rdist(A.apply(y), ctx) <= LogVal(-alpha) &&
                               poly_weighted_norm(y, ctx.s) <= LogVal(alpha) && dirichlet_check(A, y, alpha, ctx));
                }});
  fs.push_back({"bestapprox_oracle", 15, [](Rng& rng) {
                  FieldPtr f = q23(rng);
                  const std::size_t n = f->q() == 2 ? static_cast<std::size_t>(pick(rng, 1, 2)) : 1;
                  WeightedNormContext ctx = WeightedNormContext::standard(1, n);
                  LaurentMatrix A = fixtures::random_series_matrix(f, 1, n, 128, rng);
                  const Rational H(n == 1 ? 6 : 3);
                  BestApproxSeq s = enumerate_best_approx(A, ctx, H);
                  auto ref = oracle::best_approx_values(A, ctx, H, 1u << 16);
                  if (ref.empty()) return Outcome::kSkip;
                  if (!verify_seq_laws(s).ok || ref.size() != s.size()) return Outcome::kFail;
                  for (std::size_t i = 1; i <= s.size(); ++i)
                    if (ref[i - 1].first != s.Y(i) || ref[i - 1].second != s.M(i)) return Outcome::kFail;
                  return Outcome::kPass;
                }});
  fs.push_back({"transfer_postconditions", 20, [](Rng& rng) {
                  FieldPtr f = Field::prime(2);
                  WeightedNormContext ctx = WeightedNormContext::standard(1, 1);
                  LaurentMatrix A = rng() % 2 ? fixtures::alpha_quad(f, 256) : fixtures::random_series_matrix(f, 1, 1, 256, rng);
                  const std::int64_t Y = pick(rng, 1, 6), eps = pick(rng, -3, -1);
                  auto [dv, y] = min_dist_on_box(A, ctx, {Y});
                  if (dv > LogVal(eps - Y)) return Outcome::kSkip;
                  try {
                    return check(transfer(A, y, eps, Y, ctx).ok);
                  } catch (const PreconditionError&) {
                    return Outcome::kSkip;
                  }
                }});
  fs.push_back({"dani_equivalence", 30, [](Rng& rng) {
                  FieldPtr f = q23(rng);
                  WeightedNormContext ctx = random_weights(rng, 2);
                  LaurentMatrix A = fixtures::random_series_matrix(f, ctx.m(), ctx.n(), 96, rng);
                  const Rational eps(pick(rng, -2, -1));
                  const std::int64_t ell = pick(rng, 1, 8);
                  return check(in_X_gt_eps(apply_flow(make_uA_lattice(A), ctx, ell), ctx, eps) ==
                               !dani_arithmetic(A, ctx, eps, ell));
                }});
  fs.push_back({"grid_translation", 15, [](Rng& rng) {
                  FieldPtr f = Field::prime(2);
                  WeightedNormContext ctx = WeightedNormContext::standard(1, 1);
                  LaurentMatrix A = fixtures::random_series_matrix(f, 1, 1, 96, rng);
                  VecKv theta{fixtures::random_series(f, 96, rng)};
                  Grid g = make_target_grid(A, theta);
                  Grid h = g;
                  PolyVec w{fixtures::random_poly(f, 3, rng), fixtures::random_poly(f, 3, rng)};
                  VecKv shift = g.basis.apply(w);
                  for (std::size_t i = 0; i < 2; ++i) h.translation[i] = h.translation[i] + shift[i];
                  const Rational eps(pick(rng, -2, 0));
                  const std::int64_t ell = pick(rng, 0, 6);
                  return check(in_L_eps(apply_flow(g, ctx, ell), ctx, eps).in_L ==
                               in_L_eps(apply_flow(h, ctx, ell), ctx, eps).in_L);
                }});
  fs.push_back({"cantor_discard_exactness", 20, [](Rng& rng) {
                  FieldPtr f = Field::prime(2);
                  const std::size_t m = rng() % 2 ? 1 : 2;
                  const std::int64_t delta = m == 1 ? -4 : -7;
                  const std::int64_t D = pick(rng, 0, 4);
                  PolyVec y;
                  for (std::size_t j = 0; j < m; ++j) y.push_back(fixtures::random_poly(f, D, rng));
                  if (is_zero(y)) return Outcome::kSkip;
                  // growth b = -delta: cells of depth n >= deg y + b
                  const std::int64_t n = D - delta + pick(rng, 0, 3);
                  CellDigits corner(m);
                  for (auto& c : corner)
                    for (std::int64_t u = 0; u < n; ++u) c.push_back(fixtures::random_element(*f, rng));
                  const bool verdict = meets_Z(*f, y, corner, delta);
                  if (verdict != meets_Z_laurent(f, y, corner, delta)) return Outcome::kFail;
                  for (std::uint32_t ext = 0; ext < (1u << m); ++ext) {
                    CellDigits pt = corner;
                    for (std::size_t j = 0; j < m; ++j) pt[j].push_back(Fq{(ext >> j) & 1u});
                    if (meets_Z_laurent(f, y, pt, delta) != verdict) return Outcome::kFail;
                  }
                  return Outcome::kPass;
                }});
  fs.push_back({"subsequence_postcondition", 10, [](Rng& rng) {
                  FieldPtr f = Field::prime(2);
                  WeightedNormContext ctx = WeightedNormContext::standard(1, 1);
                  LaurentMatrix A = rng() % 2 ? fixtures::alpha_quad(f, 256) : fixtures::random_series_matrix(f, 1, 1, 256, rng);
                  BestApproxSeq s = enumerate_best_approx(A, ctx, Rational(24));
                  if (s.terminated) return Outcome::kSkip;
                  try {
                    SubseqPlan p = bz_subsequence(s, Rational(2), Rational(1), Rational(2));
                    return check(verify_plan(s, p.phi, p.b_log, p.c_log));
                  } catch (const PreconditionError&) {
                    return Outcome::kSkip;
                  }
                }});
  fs.push_back({"fixtures", 1, [](Rng&) {
                  FieldPtr f = Field::prime(2);
                  WeightedNormContext ctx = WeightedNormContext::standard(1, 1);
                  BestApproxSeq s = enumerate_best_approx(fixtures::alpha_quad(f, 512), ctx, Rational(7));
                  if (s.size() < 8) return Outcome::kFail;
                  for (std::size_t i = 1; i <= 8; ++i)
                    if (s.Y(i) != LogVal(static_cast<std::int64_t>(i) - 1) || s.M(i) != LogVal(-static_cast<std::int64_t>(i)))
                      return Outcome::kFail;
                  if (classify_singular(fixtures::inv_Z(f), ctx, Rational(8)).verdict != Verdict::kSingularCertified)
                    return Outcome::kFail;
                  MinimaResult r = successive_minima(fixtures::diag_Z(f));
                  return check(r.lambda_logs == std::vector<LogVal>{LogVal(-1), LogVal(1)} && r.covol_log == LogVal(-2));
                }});
  return fs;
}

}  // namespace

bool selftest(const SelftestOptions& opt, std::ostream& out) {
  bool all = true;
  out << "selftest seed=" << opt.seed << "\n";
  const auto fs = families();
  for (std::size_t fi = 0; fi < fs.size(); ++fi) {
    const Family& fam = fs[fi];
    const std::size_t n = fam.count * opt.scale;
    std::vector<Outcome> res(n);
    std::vector<std::string> why(n);
    parallel_for(n, opt.workers, [&](std::size_t i) {
      std::seed_seq sq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                       static_cast<std::uint32_t>(fi), static_cast<std::uint32_t>(i)};
      Rng rng(sq);
      try {
        res[i] = fam.run(rng);
      } catch (const std::exception& e) {
        res[i] = Outcome::kFail;
        why[i] = e.what();
      }
    });
    std::size_t pass = 0, fail = 0, skip = 0;
    std::string first;
    for (std::size_t i = 0; i < n; ++i) {
      if (res[i] == Outcome::kPass) ++pass;
      if (res[i] == Outcome::kSkip) ++skip;
      if (res[i] == Outcome::kFail) {
        if (fail == 0) first = " first_failure=" + std::to_string(i) + (why[i].empty() ? "" : " (" + why[i] + ")");
        ++fail;
      }
    }
    all = all && fail == 0;
    out << (fail == 0 ? "[ok]   " : "[FAIL] ") << fam.name << ": instances=" << pass + fail << " passed=" << pass
        << " skipped=" << skip << first << "\n";
  }
  out << "result: " << (all ? "PASS" : "FAIL") << "\n";
  return all;
}

}  // namespace ffapprox::cli
