// Acceptance run: one line per criterion, nonzero exit if any fails.
// Usage: ffapprox_acceptance <path-to-ffapprox> [criterion...]

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../support/testgen.hpp"
#include "ffapprox/badset.hpp"
#include "ffapprox/bestapprox.hpp"
#include "ffapprox/dynamics.hpp"
#include "ffapprox/errors.hpp"
#include "ffapprox/fixtures.hpp"
#include "ffapprox/oracles.hpp"
#include "ffapprox/pipeline.hpp"

using namespace ffapprox;
using ffapprox::testing::pick;
using ffapprox::testing::q23;
using ffapprox::testing::Rng;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string s(const LogVal& v) { return v.str(); }
std::string s(const Rational& v) { return to_string(v); }

// 1. sum of log minima = d + covol for >= 500 random lattices.
Outcome c1_minkowski() {
  Rng rng(1001);
  std::size_t n = 0, bad = 0;
  std::string first;
  for (; n < 500; ++n) {
    FieldPtr f = q23(rng);
    const auto d = static_cast<std::size_t>(pick(rng, 2, 3));
    LaurentMatrix B = fixtures::random_lattice(f, d, pick(rng, 0, 4), rng, pick(rng, 0, 2));
    MinimaResult r = successive_minima(B);
    LogVal sum(0);
    for (const auto& l : r.lambda_logs) sum = sum + l;
    // covol from the determinant, independently of the minima code
    const LogVal cov = covol(B);
    if (!(sum == LogVal(static_cast<std::int64_t>(d)) + cov) || r.lambda_logs.size() != d) {
      if (bad++ == 0) first = " first_bad=" + std::to_string(n) + " sum=" + s(sum) + " covol=" + s(cov);
    }
  }
  return {bad == 0, "lattices=" + std::to_string(n) + " violations=" + std::to_string(bad) + first};
}

// 2. successive_minima == brute force on >= 200 lattices.
Outcome c2_minima_oracle() {
  Rng rng(1002);
  std::size_t compared = 0, bad = 0, skipped = 0;
  std::string first;
  while (compared < 200 && compared + skipped < 2000) {
    FieldPtr f = q23(rng);
    const std::size_t d = f->q() == 2 ? static_cast<std::size_t>(pick(rng, 2, 3)) : 2;
    LaurentMatrix B = fixtures::random_lattice(f, d, pick(rng, 0, d == 2 ? 2 : 1), rng, pick(rng, 0, 1));
    auto ref = oracle::minima(B, 1u << 18);
    if (ref.empty()) {
      ++skipped;
      continue;
    }
    ++compared;
    auto got = successive_minima(B).lambda_logs;
    if (got != ref && bad++ == 0) first = " first_bad=" + std::to_string(compared);
  }
  return {compared >= 200 && bad == 0, "compared=" + std::to_string(compared) + " mismatches=" + std::to_string(bad) +
                                           " oracle_cap_skips=" + std::to_string(skipped) + first};
}

// 3. Dirichlet postconditions.
Outcome c3_dirichlet() {
  Rng rng(1003);
  const auto shapes = ffapprox::testing::weight_shapes(4);
  std::size_t n = 0, bad = 0;
  std::string first;
  for (; n < 240; ++n) {
    FieldPtr f = q23(rng);
    const WeightedNormContext& ctx = shapes[n % shapes.size()];
    LaurentMatrix A = fixtures::random_series_matrix(f, ctx.m(), ctx.n(), 96, rng);
    if (n % 10 == 0)  // a few exact entries
      for (std::size_t i = 0; i < ctx.m(); ++i) A.at(i, 0) = Laurent::exact(fixtures::random_ratfunc(f, 3, rng));
    const std::int64_t alpha = pick(rng, 1, 4);
    PolyVec y = dirichlet_weighted(A, alpha, ctx);
    const LogVal dist = rdist(A.apply(y), ctx), norm = poly_weighted_norm(y, ctx.s);
    if (is_zero(y) || dist > LogVal(-alpha) || norm > LogVal(alpha)) {
      if (bad++ == 0) first = " first_bad=" + std::to_string(n) + " dist=" + s(dist) + " norm=" + s(norm);
    }
  }
  return {bad == 0, "instances=" + std::to_string(n) + " violations=" + std::to_string(bad) + first};
}

// Laws checked directly on the values.
std::string seq_law_violation(const BestApproxSeq& q) {
  const std::int64_t L = q.ctx.lcm_s();
  for (std::size_t i = 1; i <= q.size(); ++i) {
    if (q.Y(i) < LogVal(Rational(static_cast<std::int64_t>(i) - 1, L))) return "growth at " + std::to_string(i);
    if (i + 1 <= q.size()) {
      if (!(q.Y(i) < q.Y(i + 1))) return "Y not increasing at " + std::to_string(i);
      if (!(q.M(i + 1) < q.M(i))) return "M not decreasing at " + std::to_string(i);
      if (q.M(i) + q.Y(i + 1) > LogVal(2)) return "product at " + std::to_string(i);
    }
  }
  return "";
}

// 4. Best-approximation laws; alpha_quad values.
Outcome c4_bestapprox() {
  Rng rng(1004);
  const std::vector<WeightedNormContext> shapes{WeightedNormContext({1}, {1}), WeightedNormContext({2}, {1, 1}),
                                                WeightedNormContext({1, 1}, {2}), WeightedNormContext({2}, {2}),
                                                WeightedNormContext({1, 2}, {3})};
  std::size_t used = 0, bad = 0, tries = 0, minlen = 1000;
  std::string first;
  while (used < 60 && tries < 400) {
    ++tries;
    FieldPtr f = q23(rng);
    const WeightedNormContext& ctx = shapes[tries % shapes.size()];
    LaurentMatrix A = fixtures::random_series_matrix(f, ctx.m(), ctx.n(), 256, rng);
    const Rational H(ctx.n() == 1 ? 10 : 6);
    BestApproxSeq q = enumerate_best_approx(A, ctx, H);
    if (q.terminated || q.size() < 6) continue;
    ++used;
    minlen = std::min(minlen, q.size());
    std::string v = seq_law_violation(q);
    if (!v.empty() && bad++ == 0) first = " first_bad=" + std::to_string(tries) + " (" + v + ")";
  }
  FieldPtr f2 = Field::prime(2);
  BestApproxSeq aq = enumerate_best_approx(fixtures::alpha_quad(f2, 512), WeightedNormContext({1}, {1}), Rational(8));
  bool aq_ok = aq.size() >= 8;
  for (std::size_t i = 1; aq_ok && i <= 8; ++i)
    aq_ok = aq.Y(i) == LogVal(static_cast<std::int64_t>(i) - 1) && aq.M(i) == LogVal(-static_cast<std::int64_t>(i));
  return {used >= 50 && bad == 0 && aq_ok && minlen >= 6,
          "prefixes=" + std::to_string(used) + " min_length=" + std::to_string(minlen) + " violations=" +
              std::to_string(bad) + " alpha_quad_i<=8=" + (aq_ok ? "exact" : "WRONG") + first};
}

// 5. Transference with (beta2, k1..k4) = (1, 5, 1, 2, 0).
Outcome c5_transfer() {
  const WeightedNormContext ctx({1}, {1});
  const KappaConstants K = kappa_constants(ctx);
  const bool consts = K.beta == Rational(1) && K.kappa1 == Rational(5) && K.kappa2 == Rational(1) &&
                      K.kappa3 == Rational(2) && K.kappa4 == Rational(0);
  FieldPtr f2 = Field::prime(2), f3 = Field::prime(3);
  Rng rng(1005);
  std::vector<LaurentMatrix> family{fixtures::alpha_quad(f2, 512), fixtures::alpha_quad(f3, 512),
                                    fixtures::liouville(f2, 800)};
  for (int i = 0; i < 4; ++i) family.push_back(fixtures::random_series_matrix(i % 2 ? f3 : f2, 1, 1, 512, rng));
  std::size_t checked = 0, bad = 0, too_small = 0;
  std::string first;
  for (const auto& A : family) {
    BestApproxSeq q = enumerate_best_approx(A, ctx, Rational(40));
    for (std::size_t i = 1; i <= q.size(); ++i) {
      if (q.M(i).is_neg_inf()) break;
      const std::int64_t Yi = q.Y(i).value().numerator();
      const std::int64_t Mi = q.M(i).value().numerator();
      // admissible: Y >= max(Y_i, 1) and eps in [M_i + Y, -1]
      for (std::int64_t Y = std::max<std::int64_t>(Yi, 1); Y <= Yi + 2; ++Y)
        for (std::int64_t eps = Mi + Y; eps <= -1; ++eps) {
          if (checked >= 400) break;
          const PolyVec& y = q.steps[i - 1].y;
          TransferResult t;
          try {
            t = transfer(A, y, eps, Y, ctx);
          } catch (const PreconditionError&) {
            ++too_small;
            continue;
          }
          ++checked;
          const LogVal X(Rational(2 + Y));
          const LogVal bound(Rational(5 + eps) - Rational(2 + Y));
          const LogVal xn = poly_weighted_norm(t.x, ctx.r);
          const LogVal xd = sdist(mat_vec_transposed(A, t.x), ctx);
          if (is_zero(t.x) || xn > X || xd > bound) {
            if (bad++ == 0) first = " first_bad: i=" + std::to_string(i) + " eps=" + std::to_string(eps);
          }
        }
    }
  }
  return {consts && checked >= 50 && bad == 0,
          std::string("constants=") + (consts ? "(1,5,1,2,0)" : "WRONG") + " triples=" + std::to_string(checked) +
              " violations=" + std::to_string(bad) + " y_too_small=" + std::to_string(too_small) + first};
}

// 6. Dani equivalence.
Outcome c6_dani() {
  Rng rng(1006);
  std::size_t n = 0, bad = 0, inside = 0;
  std::string first;
  for (; n < 150; ++n) {
    FieldPtr f = q23(rng);
    WeightedNormContext ctx = ffapprox::testing::random_weights(rng, 3);
    LaurentMatrix A = fixtures::random_series_matrix(f, ctx.m(), ctx.n(), 128, rng);
    if (n % 15 == 0 && ctx.m() == 1 && ctx.n() == 1) A = fixtures::alpha_quad(f, 256);
    const Rational eps(pick(rng, -2, -1));
    const std::int64_t ell = pick(rng, 0, 8);
    const bool lattice = in_X_gt_eps(apply_flow(make_uA_lattice(A), ctx, ell), ctx, eps);
    const bool no_solution = !dani_arithmetic(A, ctx, eps, ell);
    inside += lattice;
    if (lattice != no_solution && bad++ == 0) first = " first_bad=" + std::to_string(n);
  }
  return {bad == 0, "triples=" + std::to_string(n) + " in_X=" + std::to_string(inside) + " disagreements=" +
                        std::to_string(bad) + first};
}

// 7. Trend fixtures.
Outcome c7_trend() {
  FieldPtr f = Field::prime(2);
  const WeightedNormContext ctx({1}, {1});
  const Rational eps(-1);
  Classification inv = classify_singular(fixtures::inv_Z(f), ctx, Rational(8));
  auto at8 = [](const std::vector<StatisticRow>& rows) -> std::optional<Rational> {
    for (const auto& r : rows)
      if (r.k == 8) return r.fraction;
    return std::nullopt;
  };
  BestApproxSeq aq = enumerate_best_approx(fixtures::alpha_quad(f, 512), ctx, Rational(12));
  auto aq8 = at8(singular_statistic(aq, eps));
  LaurentMatrix lv = fixtures::one_by_one(fixtures::liouville_series(f, 4, 0));
  BestApproxSeq ls = enumerate_best_approx(lv, ctx, Rational(30));
  auto lv8 = at8(singular_statistic(ls, eps));
  const bool inv_ok = inv.verdict == Verdict::kSingularCertified;
  const bool aq_ok = aq8 && *aq8 >= 1 && *aq8 == Rational(8, 7);
  const bool lv_ok = lv8 && *lv8 <= Rational(1, 4);
  std::ostringstream d;
  d << "inv_Z=" << to_string(inv.verdict) << " alpha_quad(k=8)=" << (aq8 ? s(*aq8) : "n/a")
    << " liouville_i<=4(k=8)=" << (lv8 ? s(*lv8) : "n/a") << " (need <= 1/4)";
  return {inv_ok && aq_ok && lv_ok, d.str()};
}

// 8. Cantor construction against exhaustive counting.
Outcome c8_cantor() {
  FieldPtr f = Field::prime(2);
  const std::int64_t delta = -4;
  const std::size_t L = 5;
  std::vector<PolyVec> ys;
  for (std::int64_t k = 1; k <= 6; ++k) {
    Poly y = Poly::monomial(f, f->one(), 4 * k) + Poly::monomial(f, f->one(), k) + Poly::one(f);
    ys.push_back({y});
  }
  const Rational c1 = cantor_c1(2, 1, delta);
  CellTree T = build_cantor(f, ys, {1}, delta, L);
  std::ostringstream d;
  bool ok = c1 == Rational(1, 4) && T.depth() == L && !T.truncated_by_budget;
  // Exhaustive: every digit string of depth n_k, kept iff it avoids Z for y_1..y_{k-1}.
  std::vector<std::size_t> count(L + 1, 0);
  count[0] = 1;
  bool per_parent_ok = true;
  for (std::size_t k = 1; k <= L; ++k) {
    const std::int64_t nk = 4 * static_cast<std::int64_t>(k);
    std::map<std::uint64_t, std::size_t> children;  // parent prefix -> surviving children
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << nk); ++code) {
      CellDigits th(1);
      for (std::int64_t u = 0; u < nk; ++u) th[0].push_back(Fq{static_cast<std::uint32_t>((code >> (nk - 1 - u)) & 1u)});
      bool keep = true;
      for (std::size_t i = 1; keep && i < k; ++i) keep = !meets_Z_laurent(f, ys[i - 1], th, delta);
      if (!keep) continue;
      ++count[k];
      ++children[code >> 4];
    }
    if (count[k] != T.count(k)) ok = false;
    if (k >= 2) {
      // c1 q^{|r|(Y_k - Y_{k-1})} = 16/4
      if (children.size() != count[k - 1]) per_parent_ok = false;
      for (const auto& [p, c] : children)
        if (Rational(static_cast<std::int64_t>(c)) < c1 * 16) per_parent_ok = false;
      // total >= c1^{k-1} q^{Y_k - Y_1}
      Rational tot(1);
      for (std::size_t i = 1; i < k; ++i) tot *= c1 * 16;
      if (Rational(static_cast<std::int64_t>(count[k])) < tot) per_parent_ok = false;
    }
  }
  ok = ok && per_parent_ok && survivor_bound_check(T).ok;
  d << "c1=" << s(c1) << " counts=";
  for (std::size_t k = 1; k <= L; ++k) d << (k > 1 ? "," : "") << count[k];
  d << " tree_counts=";
  for (std::size_t k = 1; k <= L; ++k) d << (k > 1 ? "," : "") << T.count(k);
  d << " survivor_bound=" << (per_parent_ok ? "ok" : "VIOLATED");
  // Bad^delta on samples of the deepest level, by Laurent arithmetic.
  std::size_t sampled = 0, bad = 0;
  for (std::size_t idx : sample_indices(T.count(L), 256)) {
    ++sampled;
    VecKv th = T.corner(L, idx);
    for (std::size_t i = 1; i < L; ++i) {
      Laurent v = Laurent::from_poly(ys[i - 1][0]) * th[0];
      if (v.dist_to_Rv() < LogVal(delta)) {
        ++bad;
        break;
      }
    }
  }
  ok = ok && bad == 0 && sampled > 0;
  d << " sampled=" << sampled << " bad_delta_failures=" << bad;
  return {ok, d.str()};
}

// 9. Pipeline coherence on the Liouville series.
Outcome c9_pipeline() {
  FieldPtr f = Field::prime(2);
  PipelineOptions opt;
  opt.samples = 128;
  opt.eps_horizon = Rational(6);
  PipelineReport r = pipeline_lower_bound(fixtures::liouville(f, 1000), WeightedNormContext({1}, {1}), -4,
                                          Rational(5), Rational(130), opt);
  std::ostringstream d;
  const bool dim_ok = r.dim && r.dim->bound && *r.dim->bound > 0 && *r.dim->bound <= 1;
  d << "path=" << r.path << " dim_bound=" << (dim_ok ? s(*r.dim->bound) : "none") << " samples=" << r.samples.size()
    << " eps_bad_witnesses=" << r.eps_bad_witnesses << " bad_delta_failures=" << r.bad_delta_failures;
  return {r.path == "cantor" && dim_ok && r.samples.size() >= 100 && r.eps_bad_witnesses == 0 &&
              r.bad_delta_failures == 0,
          d.str()};
}

// 10. selftest output with one and four workers.
std::string exec(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), k);
  status = pclose(p);
  return out;
}

Outcome c10_determinism(const std::string& exe) {
  int s1 = 0, s2 = 0, s3 = 0;
  const std::string a = exec("'" + exe + "' selftest --workers 1", s1);
  const std::string b = exec("'" + exe + "' selftest --workers 4", s2);
  const std::string c = exec("'" + exe + "' selftest --workers 4", s3);
  const bool same = !a.empty() && a == b && b == c;
  return {same && s1 == 0 && s2 == 0 && s3 == 0,
          std::string("bytes=") + std::to_string(a.size()) + (same ? " identical" : " DIFFER") +
              " exit=" + std::to_string(s1) + "," + std::to_string(s2) + "," + std::to_string(s3)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: ffapprox_acceptance <ffapprox-binary> [criterion...]\n";
    return 2;
  }
  const std::string exe = argv[1];
  std::set<int> only;
  for (int i = 2; i < argc; ++i) only.insert(std::stoi(argv[i]));
  struct Crit {
    int id;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Crit> crits{{1, 60, c1_minkowski},   {2, 120, c2_minima_oracle}, {3, 120, c3_dirichlet},
                                {4, 120, c4_bestapprox}, {5, 60, c5_transfer},       {6, 180, c6_dani},
                                {7, 60, c7_trend},       {8, 300, c8_cantor},        {9, 300, c9_pipeline},
                                {10, 600, [&] { return c10_determinism(exe); }}};
  int failed = 0;
  for (const auto& c : crits) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit_s;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    char t[64];
    std::snprintf(t, sizeof t, "%.2fs/%.0fs", secs, c.limit_s);
    std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  [" << t << (in_time ? "" : " TIMEOUT")
              << "] " << o.detail << std::endl;
  }
  std::cout << "acceptance: " << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " failing") << "\n";
  return failed == 0 ? 0 : 1;
}
