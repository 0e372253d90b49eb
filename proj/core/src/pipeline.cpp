#include "ffapprox/pipeline.hpp"

#include "ffapprox/errors.hpp"

namespace ffapprox {

namespace {

template <class F>
auto in_stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    rethrow_in_stage(e, name);
  }
}

}  // namespace

SPropReport check_sprop_inclusion(const LaurentMatrix& A, const WeightedNormContext& ctx, const VecKv& theta,
                                  std::int64_t delta_log, const BestApproxSeq& seqT, const SubseqPlan& plan,
                                  const Rational& horizon) {
  if (delta_log > 0) throw PreconditionError("sprop: need delta <= 1");
  if (theta.size() != ctx.m()) throw InputError("sprop: theta length does not match A");
  for (auto i : plan.phi) {
    const PolyVec& y = seqT.steps.at(i - 1).y;
    Laurent s = Laurent::zero(A.field());
    for (std::size_t j = 0; j < y.size(); ++j) s = s + Laurent::from_poly(y[j]) * theta[j];
    if (s.dist_to_Rv() < LogVal(delta_log))
      throw PreconditionError("sprop: theta is not in Bad^delta (index " + std::to_string(i) + ")");
  }
  SPropReport rep;
  rep.eps_log = Rational(delta_log) * (Rational(1, ctx.min_r()) + Rational(1, ctx.min_s())) - plan.b_log - plan.c_log;
  rep.search = is_eps_bad(A, theta, ctx, rep.eps_log, horizon);
  if (!rep.search.bad && !plan.phi.empty()) {
    rep.within_plan = rep.search.witness_norm <= seqT.Y(plan.phi.back());
    rep.failure = rep.within_plan;
  }
  return rep;
}

PipelineReport pipeline_lower_bound(const LaurentMatrix& A, const WeightedNormContext& ctx, std::int64_t delta_log,
                                    const Rational& a_log, const Rational& horizon, const PipelineOptions& opt) {
  ctx.validate();
  if (A.rows() != ctx.m() || A.cols() != ctx.n()) throw InputError("matrix shape does not match the weights");
  PipelineReport rep;
  rep.delta_log = delta_log;
  rep.a_log = a_log;
  const WeightedNormContext ctxT = ctx.swapped();
  rep.seqT = in_stage("bestapprox", [&] { return enumerate_best_approx(A.transposed(), ctxT, horizon); });
  rep.seq_bounds = verify_seq_bounds(rep.seqT);
  if (rep.seqT.terminated) {
    rep.path = "remark";
    return rep;
  }
  rep.path = "cantor";
  rep.b_log = Rational(-delta_log, ctx.min_r());
  rep.c_log = best_approx_product_bound(ctxT);
  rep.eps_log = Rational(delta_log) * (Rational(1, ctx.min_r()) + Rational(1, ctx.min_s())) - rep.b_log - rep.c_log;
  rep.plan = in_stage("subsequence", [&] { return bz_subsequence(rep.seqT, a_log, rep.b_log, rep.c_log); });

  std::vector<PolyVec> ys;
  for (auto i : rep.plan->phi) ys.push_back(rep.seqT.steps[i - 1].y);
  const std::size_t levels = std::min(opt.max_levels, ys.size());
  rep.tree = in_stage("cantor", [&] {
    return build_cantor(A.field(), ys, ctx.r, delta_log, levels, opt.budget, opt.workers);
  });
  rep.survivors = survivor_bound_check(*rep.tree);
  rep.dim = dim_lower_bound(rep.seqT, delta_log, *rep.plan, A.field()->q(), ctx.m(), ctx.min_r());

  const CellTree& T = *rep.tree;
  const std::size_t depth = T.depth();
  for (auto idx : sample_indices(T.count(depth), opt.samples)) {
    SampleCheck sc;
    CellDigits d = T.digits(depth, idx);
    for (const auto& dj : d) sc.digits.push_back(digit_string(*A.field(), dj));
    for (std::size_t i = 1; i < depth; ++i)
      if (meets_Z_laurent(A.field(), T.ys[i - 1], d, delta_log)) sc.bad_delta = false;
    VecKv theta = digits_to_kv(A.field(), d);
    EpsBadResult eb = in_stage("epsbad", [&] { return is_eps_bad(A, theta, ctx, rep.eps_log, opt.eps_horizon); });
    sc.eps_bad = eb.bad;
    if (!sc.bad_delta) ++rep.bad_delta_failures;
    if (!sc.eps_bad) ++rep.eps_bad_witnesses;
    rep.samples.push_back(std::move(sc));
  }
  return rep;
}

}  // namespace ffapprox
