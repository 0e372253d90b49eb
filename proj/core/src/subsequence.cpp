#include <algorithm>
#include <optional>

#include "ffapprox/bestapprox.hpp"
#include "ffapprox/errors.hpp"

namespace ffapprox {

namespace {

Rational Yv(const BestApproxSeq& s, std::size_t i) { return s.Y(i).value(); }

bool pair_ok(const BestApproxSeq& s, std::size_t u, std::size_t v, const Rational& b, const Rational& c) {
  return Yv(s, v) >= b + Yv(s, u) && s.M(u) + s.Y(v) <= LogVal(b + c);
}

// psi -> phi construction when J contains a final run [j*, L-1].
std::vector<std::size_t> case_two(const BestApproxSeq& s, const Rational& a, const Rational& b, const Rational& c) {
  const std::size_t L = s.size();
  const Rational cut = b + c - 3 * a;
  std::size_t jstar = L;
  for (std::size_t j = L - 1; j >= 1; --j) {
    if (s.M(j) + s.Y(j + 1) <= LogVal(cut)) jstar = j;
    else break;
  }
  if (jstar >= L) return {};
  std::vector<std::size_t> psi{jstar};
  for (;;) {
    std::size_t nxt = 0;
    for (std::size_t j = psi.back() + 1; j <= L; ++j)
      if (Yv(s, j) >= a + Yv(s, psi.back())) {
        nxt = j;
        break;
      }
    if (nxt == 0) break;
    psi.push_back(nxt);
  }
  std::vector<std::size_t> phi;
  for (std::size_t i = 0; i + 1 < psi.size(); ++i) {
    if (s.M(psi[i]) + s.Y(psi[i + 1]) <= LogVal(b + c - a)) phi.push_back(psi[i]);
    else phi.push_back(psi[i + 1] - 1);
  }
  return phi;
}

// Chains through J0 = {j : Y_{j+1} >= b + Y_j}, as in the lemma.
std::vector<std::size_t> growth_chain(const BestApproxSeq& s, const Rational& b) {
  const std::size_t L = s.size();
  std::vector<std::size_t> J0;
  for (std::size_t j = 1; j + 1 <= L; ++j)
    if (Yv(s, j + 1) >= b + Yv(s, j)) J0.push_back(j);
  if (J0.empty()) return {};
  std::vector<std::size_t> phi{J0.front()};
  for (;;) {
    std::size_t j0 = 0;
    for (auto j : J0)
      if (j > phi.back()) {
        j0 = j;
        break;
      }
    if (j0 == 0) break;
    // j_1 > j_2 > ... each the largest index after phi.back() that is b below
    // the previous one.
    std::vector<std::size_t> chain;
    std::size_t top = j0;
    for (;;) {
      std::size_t best = 0;
      for (std::size_t j = phi.back() + 1; j < top; ++j)
        if (Yv(s, top) >= b + Yv(s, j)) best = j;
      if (best == 0) break;
      chain.push_back(best);
      top = best;
    }
    std::reverse(chain.begin(), chain.end());
    phi.insert(phi.end(), chain.begin(), chain.end());
    phi.push_back(j0);
  }
  return phi;
}

// Greedy chain from the earliest start with Ylog > 0 that has a valid
// successor. Later starts would flatter the slope surrogate on a finite
// prefix, so they are not considered.
std::vector<std::size_t> direct_search(const BestApproxSeq& s, const Rational& b, const Rational& c) {
  const std::size_t L = s.size();
  for (std::size_t start = 1; start <= L; ++start) {
    if (!(s.Y(start) > LogVal(0))) continue;
    std::vector<std::size_t> phi{start};
    for (;;) {
      std::size_t nxt = 0;
      for (std::size_t v = phi.back() + 1; v <= L; ++v)
        if (pair_ok(s, phi.back(), v, b, c)) {
          nxt = v;
          break;
        }
      if (nxt == 0) break;
      phi.push_back(nxt);
    }
    if (phi.size() >= 2) return phi;
  }
  return {};
}

}  // namespace

bool verify_plan(const BestApproxSeq& seq, const std::vector<std::size_t>& phi, const Rational& b, const Rational& c) {
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (phi[i] < 1 || phi[i] > seq.size()) return false;
    if (seq.M(phi[i]).is_neg_inf()) return false;
    if (i + 1 < phi.size()) {
      if (phi[i + 1] <= phi[i]) return false;
      if (!pair_ok(seq, phi[i], phi[i + 1], b, c)) return false;
    }
  }
  return true;
}

SubseqPlan bz_subsequence(const BestApproxSeq& seq, const Rational& a_log, const Rational& b_log,
                          const Rational& c_log) {
  if (!(a_log > b_log && b_log > 0)) throw PreconditionError("subsequence: need a > b > 0");
  if (seq.terminated) throw PreconditionError("subsequence: sequence is terminated");
  if (seq.size() < 2) throw PreconditionError("horizon insufficient: fewer than two steps");
  for (std::size_t j = 1; j < seq.size(); ++j)
    if (seq.M(j) + seq.Y(j + 1) > LogVal(c_log))
      throw PreconditionError("subsequence: c is below an observed product M_j Y_{j+1}");

  SubseqPlan plan{{}, a_log, b_log, c_log, ""};
  auto accept = [&](std::vector<std::size_t> phi, const char* method) {
    if (phi.size() >= 2 && verify_plan(seq, phi, b_log, c_log)) {
      plan.phi = std::move(phi);
      plan.method = method;
      return true;
    }
    return false;
  };
  if (accept(case_two(seq, a_log, b_log, c_log), "case2")) return plan;
  if (accept(growth_chain(seq, b_log), "growth-chain")) return plan;
  if (accept(direct_search(seq, b_log, c_log), "direct-search")) return plan;
  throw PreconditionError("horizon insufficient: no valid subsequence of length >= 2");
}

}  // namespace ffapprox
