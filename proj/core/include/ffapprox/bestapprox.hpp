#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffapprox/geometry.hpp"

namespace ffapprox {

struct BestApproxStep {
  PolyVec y;
  LogVal Ylog;  // ||y||_s
  LogVal Mlog;  // <A y>_r
};

struct BestApproxSeq {
  std::vector<BestApproxStep> steps;
  bool terminated = false;
  WeightedNormContext ctx;
  Rational horizon;

  std::size_t size() const { return steps.size(); }
  // 1-based accessors, matching the usual indexing of the sequence.
  const LogVal& Y(std::size_t i) const { return steps[i - 1].Ylog; }
  const LogVal& M(std::size_t i) const { return steps[i - 1].Mlog; }
};

// Greedy best approximations with ||y||_s <= q^horizon.
BestApproxSeq enumerate_best_approx(const LaurentMatrix& A, const WeightedNormContext& ctx, const Rational& horizon);

// min over nonzero y with deg y_j <= bounds[j] of <A y>_r, with the
// lexicographically smallest minimizer. Exposed for tests.
std::pair<LogVal, PolyVec> min_dist_on_box(const LaurentMatrix& A, const WeightedNormContext& ctx,
                                           const std::vector<std::int64_t>& bounds);

struct SeqReport {
  bool ok = true;
  LogVal max_product = LogVal::neg_inf();  // max M_i + Y_{i+1}
  Rational bound;                          // uniform bound (2 at genus 0)
  std::vector<std::string> violations;
};

// Uniform bound M_i + Y_{i+1} <= bound.
SeqReport verify_seq_bounds(const BestApproxSeq& seq);
// Monotonicity, lattice of values, growth Y_i >= (i-1)/lcm s, product bound.
SeqReport verify_seq_laws(const BestApproxSeq& seq);

struct StatisticRow {
  std::size_t k;
  Rational fraction;
  bool after_termination = false;
};
std::vector<StatisticRow> singular_statistic(const BestApproxSeq& seq, const Rational& eps_prime_log);

enum class Verdict { kSingularCertified, kTrendSingular, kTrendNonsingular };
std::string to_string(Verdict v);

struct Classification {
  Verdict verdict;
  BestApproxSeq seq;
  Rational eps_prime_log;
  std::vector<StatisticRow> statistic;
  Rational threshold;  // heuristic cut for the trend verdict
};

// Heuristic except for the terminated case: the trend verdict compares the
// last statistic value against `threshold`.
Classification classify_singular(const LaurentMatrix& A, const WeightedNormContext& ctx, const Rational& horizon,
                                 const Rational& eps_prime_log = Rational(-1),
                                 const Rational& threshold = Rational(1, 4));

struct SubseqPlan {
  std::vector<std::size_t> phi;  // 1-based indices into the sequence
  Rational a_log, b_log, c_log;
  std::string method;            // which construction produced phi
};

// Checks Y_{phi(i+1)} >= b + Y_{phi(i)} and M_{phi(i)} + Y_{phi(i+1)} <= b + c.
bool verify_plan(const BestApproxSeq& seq, const std::vector<std::size_t>& phi, const Rational& b, const Rational& c);

SubseqPlan bz_subsequence(const BestApproxSeq& seq, const Rational& a_log, const Rational& b_log,
                          const Rational& c_log);

}  // namespace ffapprox
