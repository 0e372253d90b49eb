#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffapprox/badset.hpp"
#include "ffapprox/bestapprox.hpp"
#include "ffapprox/dynamics.hpp"

namespace ffapprox {

struct PipelineOptions {
  std::size_t max_levels = 6;
  std::size_t budget = std::size_t{1} << 24;
  std::size_t samples = 128;
  Rational eps_horizon{6};
  std::size_t workers = 1;
};

struct SampleCheck {
  std::vector<std::string> digits;  // one digit string per coordinate
  bool bad_delta = true;            // |<y_i . theta>| >= delta for i < depth
  bool eps_bad = true;              // no is_eps_bad witness up to the horizon
};

struct PipelineReport {
  std::string path;  // "cantor" or "remark" (terminated sequence)
  BestApproxSeq seqT;
  SeqReport seq_bounds;
  Rational a_log, b_log, c_log, eps_log;
  std::int64_t delta_log = 0;
  std::optional<SubseqPlan> plan;
  std::optional<CellTree> tree;
  SurvivorReport survivors;
  std::optional<DimEstimate> dim;
  std::vector<SampleCheck> samples;
  std::size_t bad_delta_failures = 0;
  std::size_t eps_bad_witnesses = 0;
};

struct SPropReport {
  Rational eps_log;            // delta (1/min r + 1/min s) - b - c
  EpsBadResult search;
  bool within_plan = false;    // witness norm at most Y_{phi(last)}
  bool failure = false;        // a witness inside the range the plan covers
};
// theta must satisfy |<y_{phi(i)} . theta>| >= delta for every i in the plan
// (PreconditionError otherwise); then searches for x with ||x||_s <= horizon
// and ||x||_s + <A x - theta>_r < eps.
SPropReport check_sprop_inclusion(const LaurentMatrix& A, const WeightedNormContext& ctx, const VecKv& theta,
                                  std::int64_t delta_log, const BestApproxSeq& seqT, const SubseqPlan& plan,
                                  const Rational& horizon);

// best approximations of tA (weights (s, r)) -> subsequence -> Cantor
// construction -> dimension bound, with sampled survivors cross-checked by
// is_eps_bad at eps = delta (1/min r + 1/min s) q^{-b-c}.
PipelineReport pipeline_lower_bound(const LaurentMatrix& A, const WeightedNormContext& ctx, std::int64_t delta_log,
                                    const Rational& a_log, const Rational& horizon,
                                    const PipelineOptions& opt = {});

}  // namespace ffapprox
