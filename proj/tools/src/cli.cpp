#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <functional>
#include <sstream>

#include "ffapprox/badset.hpp"
#include "ffapprox/bestapprox.hpp"
#include "ffapprox/dynamics.hpp"
#include "ffapprox/errors.hpp"
#include "ffapprox/fixtures.hpp"
#include "ffapprox/json_io.hpp"
#include "ffapprox/pipeline.hpp"

namespace ffapprox::cli {

using io::json;

namespace {

struct Globals {
  std::size_t workers = 1;
  std::size_t max_unknowns = 200000;
  std::string format = "auto";
  std::uint64_t seed = 1;
  std::int64_t precision = 512;
};

// "fixture:NAME[:p]" or a JSON file path.
LaurentMatrix load_matrix(const std::string& spec, const Globals& g) {
  if (spec.rfind("fixture:", 0) == 0) {
    std::string rest = spec.substr(8), name = rest;
    std::uint32_t p = 2;
    if (auto c = rest.find(':'); c != std::string::npos) {
      name = rest.substr(0, c);
      p = static_cast<std::uint32_t>(parse_rational(rest.substr(c + 1)).numerator());
    }
    FieldPtr f = Field::prime(p);
    if (name == "alpha_quad") return fixtures::alpha_quad(f, g.precision);
    if (name == "liouville") return fixtures::liouville(f, std::max<std::int64_t>(g.precision, 1));
    if (name == "inv_Z") return fixtures::inv_Z(f);
    if (name == "diag_Z") return fixtures::diag_Z(f);
    throw InputError("unknown fixture '" + name + "'");
  }
  return io::matrix_from_json(io::load_json_file(spec));
}

WeightedNormContext load_weights(const std::string& path, const LaurentMatrix& A) {
  WeightedNormContext c = path.empty() ? WeightedNormContext::standard(A.rows(), A.cols())
                                       : io::weights_from_json(io::load_json_file(path));
  if (c.m() != A.rows() || c.n() != A.cols()) throw InputError("weights do not match the matrix shape");
  return c;
}

std::string fmt_of(const Globals& g, const char* dflt) { return g.format == "auto" ? dflt : g.format; }

json polys(const PolyVec& v) { return io::polyvec_to_json(v); }

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_rational(tok).numerator());
  return out;
}

json plan_json(const SubseqPlan& p) {
  return json{{"phi", p.phi},
              {"a_log", io::rational_to_json(p.a_log)},
              {"b_log", io::rational_to_json(p.b_log)},
              {"c_log", io::rational_to_json(p.c_log)},
              {"method", p.method}};
}

json dim_json(const DimEstimate& d) {
  json j{{"C", io::rational_to_json(d.C)}, {"C_exact", d.C_exact}};
  j["slope"] = d.slope ? json(io::rational_to_json(*d.slope)) : json(nullptr);
  j["bound"] = d.bound ? json(io::rational_to_json(*d.bound)) : json(nullptr);
  return j;
}

json tree_levels_json(const CellTree& T) {
  json lv = json::array();
  for (const auto& l : T.levels)
    lv.push_back(json{{"nvec", l.nvec},
                      {"Ylog", io::rational_to_json(l.Ylog)},
                      {"parents", l.parents},
                      {"survivors", l.survivors},
                      {"min_children", l.min_children},
                      {"bound_ok", l.bound_ok}});
  return lv;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted Diophantine approximation over F_q[Z]"};
  app.set_config("--config", "", "key=value configuration file");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--workers", g.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--max-unknowns", g.max_unknowns, "cap on unknowns per linear system")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"auto", "json", "csv"}));
  app.add_option("--seed", g.seed, "seed for randomized suites");
  app.add_option("--precision", g.precision, "series precision for fixtures")->check(CLI::PositiveNumber);

  std::string matrix, weights, horizon = "16", eps_log = "-1", theta_path, y_path;
  std::function<int()> action;

  // expand
  auto* c_expand = app.add_subcommand("expand", "Laurent expansion of every matrix entry");
  std::int64_t terms = 16;
  c_expand->add_option("--matrix", matrix, "matrix JSON or fixture:NAME")->required();
  c_expand->add_option("--terms", terms, "coefficients to print")->check(CLI::PositiveNumber);
  c_expand->callback([&] {
    action = [&] {
      LaurentMatrix A = load_matrix(matrix, g);
      json rows = json::array();
      for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) {
          const Laurent& x = A.at(i, j);
          json e{{"i", i}, {"j", j}, {"abs_log", io::logval_to_json(x.abs())},
                 {"dist_log", io::logval_to_json(x.dist_to_Rv())}, {"poly_part", io::poly_to_json(x.poly_part())}};
          const std::int64_t v0 = x.is_exact_zero() ? 0 : x.val_lower_bound();
          const std::int64_t hi = std::min(v0 + terms, x.known_bound());
          json c = json::array();
          for (auto a : x.window(v0, hi)) c.push_back(io::fq_to_json(*A.field(), a));
          e["val"] = v0;
          e["coeffs"] = c;
          e["exact"] = x.is_exact();
          rows.push_back(e);
        }
      out << json{{"entries", rows}}.dump() << "\n";
      return 0;
    };
  });

  // minima
  auto* c_minima = app.add_subcommand("minima", "successive minima and covolume of a lattice basis");
  c_minima->add_option("--matrix", matrix, "square basis (columns)")->required();
  c_minima->add_option("--weights", weights, "weights JSON; adds the rs-systole");
  c_minima->callback([&] {
    action = [&] {
      LaurentMatrix B = load_matrix(matrix, g);
      MinimaResult r = successive_minima(B);
      json lam = json::array(), vecs = json::array();
      for (std::size_t k = 0; k < r.lambda_logs.size(); ++k) {
        lam.push_back(io::logval_to_json(r.lambda_logs[k]));
        vecs.push_back(polys(r.vectors[k].coords));
      }
      json j{{"lambda_logs", lam}, {"covol_log", io::logval_to_json(r.covol_log)},
             {"product_check", r.product_ok ? "ok" : "fail"}, {"coords", vecs}};
      if (!weights.empty()) {
        WeightedNormContext ctx = io::weights_from_json(io::load_json_file(weights));
        if (ctx.d() != B.rows()) throw InputError("weights do not match the lattice dimension");
        j["systole_log"] = io::logval_to_json(rs_systole(B, ctx).value);
      }
      out << j.dump() << "\n";
      return r.product_ok ? 0 : 5;
    };
  });

  // dirichlet
  auto* c_dir = app.add_subcommand("dirichlet", "Dirichlet solution for a system");
  std::int64_t alpha = 1;
  std::string rprime, sprime;
  c_dir->add_option("--matrix", matrix)->required();
  c_dir->add_option("--weights", weights);
  c_dir->add_option("--alpha", alpha, "weighted exponent")->check(CLI::PositiveNumber);
  c_dir->add_option("--rprime", rprime, "comma list r' (with --sprime, overrides --alpha)");
  c_dir->add_option("--sprime", sprime, "comma list s'");
  c_dir->callback([&] {
    action = [&] {
      LaurentMatrix A = load_matrix(matrix, g);
      WeightedNormContext ctx = load_weights(weights, A);
      PolyVec y;
      json j;
      if (!rprime.empty() || !sprime.empty()) {
        auto rp = parse_int_list(rprime), sp = parse_int_list(sprime);
        y = dirichlet_solve(A, rp, sp);
        j["rprime"] = rp;
        j["sprime"] = sp;
      } else {
        y = dirichlet_weighted(A, alpha, ctx);
        j["alpha"] = alpha;
        j["check"] = dirichlet_check(A, y, alpha, ctx) ? "ok" : "fail";
      }
      j["y"] = polys(y);
      j["rdist_log"] = io::logval_to_json(rdist(A.apply(y), ctx));
      j["snorm_log"] = io::logval_to_json(poly_weighted_norm(y, ctx.s));
      out << j.dump() << "\n";
      return 0;
    };
  });

  // transfer
  auto* c_tr = app.add_subcommand("transfer", "transference from a solution y of A to one of tA");
  std::int64_t eps_i = -1, Ylog_i = 1;
  c_tr->add_option("--matrix", matrix)->required();
  c_tr->add_option("--weights", weights);
  c_tr->add_option("--y", y_path, "JSON {\"y\": [poly, ...]}")->required();
  c_tr->add_option("--eps-log", eps_i)->required();
  c_tr->add_option("--Y-log", Ylog_i)->required();
  c_tr->callback([&] {
    action = [&] {
      LaurentMatrix A = load_matrix(matrix, g);
      WeightedNormContext ctx = load_weights(weights, A);
      json yj = io::load_json_file(y_path);
      PolyVec y = io::polyvec_from_json(A.field(), yj.is_object() && yj.contains("y") ? yj.at("y") : yj, "y");
      TransferResult t = transfer(A, y, eps_i, Ylog_i, ctx);
      KappaConstants K = kappa_constants(ctx);
      json j{{"x", polys(t.x)},
             {"x_rnorm_log", io::logval_to_json(t.x_rnorm)},
             {"tAx_sdist_log", io::logval_to_json(t.tAx_sdist)},
             {"X_log", io::rational_to_json(t.X_log)},
             {"bound_log", io::rational_to_json(t.bound_log)},
             {"ok", t.ok},
             {"constants",
              {{"beta", io::rational_to_json(K.beta)},
               {"kappa1", io::rational_to_json(K.kappa1)},
               {"kappa2", io::rational_to_json(K.kappa2)},
               {"kappa3", io::rational_to_json(K.kappa3)},
               {"kappa4", io::rational_to_json(K.kappa4)}}}};
      out << j.dump() << "\n";
      return t.ok ? 0 : 5;
    };
  });

  // bestapprox
  auto* c_ba = app.add_subcommand("bestapprox", "best approximation sequence, one JSON line per step");
  c_ba->add_option("--matrix", matrix)->required();
  c_ba->add_option("--weights", weights);
  c_ba->add_option("--horizon", horizon, "log_q bound on ||y||_s");
  c_ba->callback([&] {
    action = [&] {
      LaurentMatrix A = load_matrix(matrix, g);
      WeightedNormContext ctx = load_weights(weights, A);
      BestApproxSeq s = enumerate_best_approx(A, ctx, parse_rational(horizon));
      for (std::size_t i = 1; i <= s.size(); ++i) {
        json j{{"i", i}, {"y", polys(s.steps[i - 1].y)}, {"Ylog", io::logval_to_json(s.Y(i))},
               {"Mlog", io::logval_to_json(s.M(i))}};
        j["product_log"] = i < s.size() ? json(io::logval_to_json(s.M(i) + s.Y(i + 1))) : json(nullptr);
        out << j.dump() << "\n";
      }
      SeqReport laws = verify_seq_laws(s);
      out << json{{"terminated", s.terminated}, {"laws_ok", laws.ok}, {"violations", laws.violations}}.dump() << "\n";
      return laws.ok ? 0 : 5;
    };
  });

  // classify
  auto* c_cl = app.add_subcommand("classify", "singular-on-average classification");
  std::string eps_prime = "-1", threshold = "1/4";
  c_cl->add_option("--matrix", matrix)->required();
  c_cl->add_option("--weights", weights);
  c_cl->add_option("--horizon", horizon);
  c_cl->add_option("--eps-prime-log", eps_prime);
  c_cl->add_option("--threshold", threshold);
  c_cl->callback([&] {
    action = [&] {
      LaurentMatrix A = load_matrix(matrix, g);
      WeightedNormContext ctx = load_weights(weights, A);
      Classification c =
          classify_singular(A, ctx, parse_rational(horizon), parse_rational(eps_prime), parse_rational(threshold));
      if (fmt_of(g, "json") == "csv") {
        out << "k,fraction,after_termination,verdict\n";
        for (const auto& r : c.statistic)
          out << r.k << "," << to_string(r.fraction) << "," << (r.after_termination ? 1 : 0) << ","
              << to_string(c.verdict) << "\n";
        return 0;
      }
      json st = json::array();
      for (const auto& r : c.statistic)
        st.push_back(json{{"k", r.k}, {"fraction", io::rational_to_json(r.fraction)},
                          {"after_termination", r.after_termination}});
      out << json{{"verdict", to_string(c.verdict)},
                  {"eps_prime_log", io::rational_to_json(c.eps_prime_log)},
                  {"threshold", io::rational_to_json(c.threshold)},
                  {"steps", c.seq.size()},
                  {"terminated", c.seq.terminated},
                  {"statistic", st}}
                 .dump()
          << "\n";
      return 0;
    };
  });

  // orbit
  auto* c_orb = app.add_subcommand("orbit", "diagonal flow orbit of u_A against X_{>eps}");
  std::int64_t steps = 8;
  c_orb->add_option("--matrix", matrix)->required();
  c_orb->add_option("--weights", weights);
  c_orb->add_option("--eps-log", eps_log);
  c_orb->add_option("--steps", steps)->check(CLI::PositiveNumber);
  c_orb->callback([&] {
    action = [&] {
      LaurentMatrix A = load_matrix(matrix, g);
      WeightedNormContext ctx = load_weights(weights, A);
      Trajectory t = dani_trajectory(A, ctx, parse_rational(eps_log), steps, g.workers);
      if (fmt_of(g, "csv") == "csv") {
        out << "ell,systole_log,in_X_gt_eps,arithmetic_side\n";
        for (const auto& r : t.rows)
          out << r.ell << "," << r.systole.str() << "," << (r.in_X ? 1 : 0) << "," << (r.arithmetic ? 1 : 0) << "\n";
      } else {
        json rows = json::array();
        for (const auto& r : t.rows)
          rows.push_back(json{{"ell", r.ell}, {"systole_log", r.systole.str()}, {"in_X_gt_eps", r.in_X},
                              {"arithmetic_side", r.arithmetic}});
        out << json{{"rows", rows}, {"outside_fraction", io::rational_to_json(t.outside_fraction)},
                    {"mismatches", t.mismatches}}
                   .dump()
            << "\n";
      }
      return t.mismatches == 0 ? 0 : 5;
    };
  });

  // epsbad
  auto* c_eb = app.add_subcommand("epsbad", "search for a violation of eps-badness up to a horizon");
  std::string hlog = "6";
  c_eb->add_option("--matrix", matrix)->required();
  c_eb->add_option("--weights", weights);
  c_eb->add_option("--theta", theta_path, "JSON {\"theta\": [...]}")->required();
  c_eb->add_option("--eps-log", eps_log);
  c_eb->add_option("--horizon-log", hlog);
  c_eb->callback([&] {
    action = [&] {
      LaurentMatrix A = load_matrix(matrix, g);
      WeightedNormContext ctx = load_weights(weights, A);
      VecKv theta = io::vector_from_json(A.field(), io::load_json_file(theta_path), "theta");
      EpsBadResult r = is_eps_bad(A, theta, ctx, parse_rational(eps_log), parse_rational(hlog));
      json j{{"verdict", r.bad ? "no_violation_up_to_horizon" : "witness"},
             {"eps_log", eps_log},
             {"horizon_log", hlog}};
      if (r.witness) {
        j["x"] = polys(*r.witness);
        j["norm_log"] = io::logval_to_json(r.witness_norm);
        j["dist_log"] = io::logval_to_json(r.witness_dist);
        j["product_log"] = io::logval_to_json(r.witness_norm + r.witness_dist);
      }
      out << j.dump() << "\n";
      return 0;
    };
  });

  // badset and pipeline share their options
  std::int64_t delta_log = -4, levels = 6;
  std::size_t budget = std::size_t{1} << 24, samples = 128;
  std::string a_log = "5", eps_h = "6";
  auto add_cantor_opts = [&](CLI::App* c) {
    c->add_option("--matrix", matrix)->required();
    c->add_option("--weights", weights);
    c->add_option("--delta-log", delta_log, "integer log_q delta");
    c->add_option("--levels", levels)->check(CLI::PositiveNumber);
    c->add_option("--budget", budget, "cap on stored cells")->check(CLI::PositiveNumber);
    c->add_option("--a-log", a_log, "growth parameter a > b");
    c->add_option("--horizon", horizon, "best approximation horizon for tA");
    c->add_option("--samples", samples);
  };
  auto* c_bad = app.add_subcommand("badset", "Cantor construction for Bad^delta and the dimension bound");
  add_cantor_opts(c_bad);
  auto* c_pipe = app.add_subcommand("pipeline", "end-to-end lower bound with eps-bad cross-checks");
  add_cantor_opts(c_pipe);
  c_pipe->add_option("--eps-horizon", eps_h, "is_eps_bad horizon (log)");

  auto cantor_run = [&](bool full) {
    LaurentMatrix A = load_matrix(matrix, g);
    WeightedNormContext ctx = load_weights(weights, A);
    PipelineOptions po;
    po.max_levels = static_cast<std::size_t>(levels);
    po.budget = budget;
    po.samples = full ? samples : 0;
    po.eps_horizon = parse_rational(eps_h);
    po.workers = g.workers;
    PipelineReport r = pipeline_lower_bound(A, ctx, delta_log, parse_rational(a_log), parse_rational(horizon), po);
    json j{{"path", r.path}, {"delta_log", r.delta_log}, {"sequence_length", r.seqT.size()}};
    if (r.path == "remark") {
      j["note"] = "tA has a terminated sequence; Bad_A(eps) has full dimension by the non-completely-irrational case";
      out << j.dump() << "\n";
      return 0;
    }
    j["plan"] = plan_json(*r.plan);
    j["levels"] = tree_levels_json(*r.tree);
    j["truncated_by_budget"] = r.tree->truncated_by_budget;
    j["survivor_check"] = json{{"ok", r.survivors.ok}, {"total_ok", r.survivors.total_ok},
                               {"violations", r.survivors.violations}};
    j["dim_estimate"] = dim_json(*r.dim);
    const CellTree& T = *r.tree;
    if (!full) {
      json s = json::array();
      for (auto idx : sample_indices(T.count(T.depth()), samples)) {
        json ds = json::array();
        for (const auto& d : T.digits(T.depth(), idx)) ds.push_back(digit_string(*A.field(), d));
        s.push_back(ds);
      }
      j["samples"] = s;
      out << j.dump() << "\n";
      return r.survivors.ok ? 0 : 5;
    }
    j["eps_log"] = io::rational_to_json(r.eps_log);
    j["eps_horizon"] = io::rational_to_json(po.eps_horizon);
    j["samples_checked"] = r.samples.size();
    j["sample_level"] = r.tree ? r.tree->depth() : 0;
    j["bad_delta_failures"] = r.bad_delta_failures;
    j["eps_bad_witnesses"] = r.eps_bad_witnesses;
    out << j.dump() << "\n";
    return r.survivors.ok && r.bad_delta_failures == 0 && r.eps_bad_witnesses == 0 ? 0 : 5;
  };
  c_bad->callback([&] { action = [&] { return cantor_run(false); }; });
  c_pipe->callback([&] { action = [&] { return cantor_run(true); }; });

  // selftest
  auto* c_self = app.add_subcommand("selftest", "run every invariant family on seeded random instances");
  std::size_t scale = 1;
  c_self->add_option("--scale", scale, "instance count multiplier")->check(CLI::PositiveNumber);
  c_self->callback([&] {
    action = [&] { return selftest(SelftestOptions{g.seed, g.workers, scale}, out) ? 0 : 5; };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }
  try {
    Limits::set_max_unknowns(g.max_unknowns);
    return action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 5;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> store{"ffapprox"};
  store.insert(store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : store) argv.push_back(s.data());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ffapprox::cli
