#include "ffapprox/badset.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "ffapprox/errors.hpp"
#include "ffapprox/parallel.hpp"

namespace ffapprox {

namespace mp = boost::multiprecision;

namespace {

mp::cpp_int ipow(mp::cpp_int b, std::int64_t e) {
  mp::cpp_int out = 1;
  for (; e > 0; e >>= 1) {
    if (e & 1) out *= b;
    b *= b;
  }
  return out;
}

// count >= c1 * q^x exactly, x rational.
bool meets_bound(std::size_t count, const Rational& c1, std::uint32_t q, const Rational& x) {
  const std::int64_t a = x.numerator(), b = x.denominator();
  mp::cpp_int lhs = ipow(mp::cpp_int(count), b) * ipow(mp::cpp_int(c1.denominator()), b);
  mp::cpp_int rhs = ipow(mp::cpp_int(c1.numerator()), b);
  if (a >= 0) rhs *= ipow(mp::cpp_int(q), a);
  else lhs *= ipow(mp::cpp_int(q), -a);
  return lhs >= rhs;
}

std::int64_t sum_r(const std::vector<std::int64_t>& r) {
  std::int64_t s = 0;
  for (auto x : r) s += x;
  return s;
}

// Sum over t of coefficient images; positions are (coordinate, exponent).
struct Position {
  std::size_t j;
  std::int64_t u;
};

}  // namespace

Rational cantor_c1(std::uint32_t q, std::size_t m, std::int64_t delta_log) {
  const std::int64_t mm = static_cast<std::int64_t>(m);
  auto qpow = [&](std::int64_t e) {
    mp::cpp_int v = ipow(mp::cpp_int(q), std::abs(e));
    if (v > mp::cpp_int(std::numeric_limits<std::int64_t>::max())) throw BudgetExceeded("c1 out of range");
    const std::int64_t iv = static_cast<std::int64_t>(v);
    return e >= 0 ? Rational(iv) : Rational(1, iv);
  };
  return qpow(-mm) - qpow(2 * mm + delta_log);
}

bool meets_Z(const Field& F, const PolyVec& y, const CellDigits& theta, std::int64_t delta_log) {
  for (std::int64_t t = 1; t <= -delta_log; ++t) {
    Fq s = F.zero();
    for (std::size_t j = 0; j < y.size(); ++j) {
      const auto& c = y[j].coeffs();
      for (std::size_t l = 0; l < c.size(); ++l) {
        const std::int64_t u = t + static_cast<std::int64_t>(l);
        if (u >= 1 && u <= static_cast<std::int64_t>(theta[j].size()))
          s = F.add(s, F.mul(c[l], theta[j][static_cast<std::size_t>(u - 1)]));
      }
    }
    if (s != F.zero()) return false;
  }
  return true;
}

VecKv digits_to_kv(FieldPtr f, const CellDigits& d) {
  VecKv out;
  for (const auto& dj : d) {
    const std::size_t n = dj.size();
    std::vector<Fq> num(n + 1, f->zero());
    for (std::size_t u = 1; u <= n; ++u) num[n - u] = dj[u - 1];
    out.push_back(Laurent::exact(RatFunc(Poly(f, std::move(num)), Poly::monomial(f, f->one(), static_cast<std::int64_t>(n)))));
  }
  return out;
}

bool meets_Z_laurent(FieldPtr f, const PolyVec& y, const CellDigits& theta, std::int64_t delta_log) {
  VecKv th = digits_to_kv(f, theta);
  Laurent s = Laurent::zero(f);
  for (std::size_t j = 0; j < y.size(); ++j) s = s + Laurent::from_poly(y[j]) * th[j];
  return s.dist_to_Rv() < LogVal(delta_log);
}

CellDigits CellTree::digits(std::size_t level, std::size_t idx) const {
  const std::uint32_t q = field->q();
  CellDigits out(r.size());
  for (std::size_t j = 0; j < r.size(); ++j)
    out[j].assign(static_cast<std::size_t>(levels[level].nvec[j]), field->zero());
  for (std::size_t k = level; k >= 1; --k) {
    const auto& lo = levels[k - 1].nvec;
    const auto& hi = levels[k].nvec;
    std::uint64_t code = code_[k][idx];
    // Last position is least significant.
    for (std::size_t jj = r.size(); jj-- > 0;)
      for (std::int64_t u = hi[jj]; u > lo[jj]; --u) {
        out[jj][static_cast<std::size_t>(u - 1)] = Fq{static_cast<std::uint32_t>(code % q)};
        code /= q;
      }
    idx = parent_[k][idx];
  }
  return out;
}

VecKv CellTree::corner(std::size_t level, std::size_t idx) const { return digits_to_kv(field, digits(level, idx)); }

CellTree build_cantor(FieldPtr f, const std::vector<PolyVec>& ys, const std::vector<std::int64_t>& r,
                      std::int64_t delta_log, std::size_t levels, std::size_t budget, std::size_t workers) {
  const std::size_t m = r.size();
  if (m == 0) throw InputError("cantor: empty weight vector");
  if (delta_log >= -3 * static_cast<std::int64_t>(m)) throw PreconditionError("cantor: need delta < q^{-3m}");
  if (levels > ys.size()) throw PreconditionError("cantor: fewer vectors than levels");
  const std::int64_t min_r = *std::min_element(r.begin(), r.end());
  const Rational b(-delta_log, min_r);
  const Rational c1 = cantor_c1(f->q(), m, delta_log);
  const std::uint32_t q = f->q();

  CellTree T;
  T.field = f;
  T.r = r;
  T.delta_log = Rational(delta_log);
  T.ys.assign(ys.begin(), ys.begin() + static_cast<std::ptrdiff_t>(levels));
  T.budget = budget;
  std::vector<Rational> Ylog;
  for (std::size_t k = 0; k < levels; ++k) {
    if (ys[k].size() != m) throw InputError("cantor: vector length does not match the weights");
    LogVal v = poly_weighted_norm(ys[k], r);
    if (v.is_neg_inf()) throw PreconditionError("cantor: zero vector in the sequence");
    Ylog.push_back(v.value());
    if (k > 0 && Ylog[k] < b + Ylog[k - 1])
      throw PreconditionError("cantor: growth hypothesis fails at index " + std::to_string(k + 1));
  }

  CantorLevel root;
  root.nvec.assign(m, 0);
  root.Ylog = Rational(0);
  root.survivors = 1;
  root.min_children = 1;
  T.levels.push_back(root);
  T.parent_.emplace_back();
  T.code_.emplace_back(1, 0);
  std::size_t total = 1;

  for (std::size_t k = 0; k < levels; ++k) {
    CantorLevel next;
    next.Ylog = Ylog[k];
    for (std::size_t j = 0; j < m; ++j)
      next.nvec.push_back(std::max<std::int64_t>(T.levels[k].nvec[j], ceil_q(Ylog[k] * r[j])));
    std::vector<Position> pos;
    for (std::size_t j = 0; j < m; ++j)
      for (std::int64_t u = T.levels[k].nvec[j] + 1; u <= next.nvec[j]; ++u) pos.push_back({j, u});
    const double log2_delta = static_cast<double>(pos.size()) * std::log2(static_cast<double>(q));
    const std::size_t parents = T.levels[k].survivors;
    if (log2_delta >= 62 || static_cast<double>(parents) * std::exp2(log2_delta) + static_cast<double>(total) >
                                static_cast<double>(budget)) {
      T.truncated_by_budget = true;
      break;
    }
    std::uint64_t Delta = 1;
    for (std::size_t p = 0; p < pos.size(); ++p) Delta *= q;

    // Level k cells are tested against y_k (1-based), i.e. ys[k-1].
    const bool discard = k >= 1;
    const std::int64_t Tn = -delta_log;
    std::vector<std::vector<Fq>> g;  // g[t-1][p]
    const PolyVec* y = discard ? &ys[k - 1] : nullptr;
    if (discard) {
      g.assign(static_cast<std::size_t>(Tn), std::vector<Fq>(pos.size(), f->zero()));
      for (std::int64_t t = 1; t <= Tn; ++t)
        for (std::size_t p = 0; p < pos.size(); ++p)
          g[static_cast<std::size_t>(t - 1)][p] = (*y)[pos[p].j].coeff(pos[p].u - t);
    }

    const std::size_t block = 2048;
    const std::size_t nblocks = (parents + block - 1) / block;
    std::vector<std::vector<std::uint32_t>> bpar(nblocks);
    std::vector<std::vector<std::uint64_t>> bcode(nblocks);
    std::vector<std::size_t> bmin(nblocks, std::numeric_limits<std::size_t>::max());
    const Field& F = *f;
    parallel_for(nblocks, workers, [&](std::size_t bi) {
      std::vector<Fq> base(static_cast<std::size_t>(discard ? Tn : 0));
      std::vector<Fq> d(pos.size());
      for (std::size_t pi = bi * block; pi < std::min(parents, (bi + 1) * block); ++pi) {
        if (discard) {
          CellDigits pd = T.digits(k, pi);
          for (std::int64_t t = 1; t <= Tn; ++t) {
            Fq s = F.zero();
            for (std::size_t j = 0; j < m; ++j) {
              const auto& c = (*y)[j].coeffs();
              for (std::size_t l = 0; l < c.size(); ++l) {
                const std::int64_t u = t + static_cast<std::int64_t>(l);
                if (u >= 1 && u <= static_cast<std::int64_t>(pd[j].size()))
                  s = F.add(s, F.mul(c[l], pd[j][static_cast<std::size_t>(u - 1)]));
              }
            }
            base[static_cast<std::size_t>(t - 1)] = s;
          }
        }
        std::size_t kept = 0;
        for (std::uint64_t code = 0; code < Delta; ++code) {
          if (discard) {
            std::uint64_t c = code;
            for (std::size_t p = pos.size(); p-- > 0;) {
              d[p] = Fq{static_cast<std::uint32_t>(c % q)};
              c /= q;
            }
            bool zero = true;
            for (std::size_t t = 0; t < base.size() && zero; ++t) {
              Fq s = base[t];
              for (std::size_t p = 0; p < pos.size(); ++p)
                if (d[p].index != 0 && g[t][p].index != 0) s = F.add(s, F.mul(d[p], g[t][p]));
              zero = s == F.zero();
            }
            if (zero) continue;
          }
          bpar[bi].push_back(static_cast<std::uint32_t>(pi));
          bcode[bi].push_back(code);
          ++kept;
        }
        bmin[bi] = std::min(bmin[bi], kept);
      }
    });
    std::vector<std::uint32_t> par;
    std::vector<std::uint64_t> codes;
    next.min_children = std::numeric_limits<std::size_t>::max();
    for (std::size_t bi = 0; bi < nblocks; ++bi) {
      par.insert(par.end(), bpar[bi].begin(), bpar[bi].end());
      codes.insert(codes.end(), bcode[bi].begin(), bcode[bi].end());
      next.min_children = std::min(next.min_children, bmin[bi]);
    }
    next.parents = parents;
    next.survivors = par.size();
    next.bound_ok = !discard || meets_bound(next.min_children, c1, q, (Ylog[k] - Ylog[k - 1]) * sum_r(r));
    total += next.survivors;
    T.levels.push_back(std::move(next));
    T.parent_.push_back(std::move(par));
    T.code_.push_back(std::move(codes));
    if (T.levels.back().survivors == 0) break;
  }
  return T;
}

SurvivorReport survivor_bound_check(const CellTree& tree) {
  SurvivorReport rep;
  if (tree.levels.empty()) throw PreconditionError("survivor check: empty tree");
  const std::uint32_t q = tree.field->q();
  const std::size_t m = tree.r.size();
  const Rational c1 = cantor_c1(q, m, tree.delta_log.numerator());
  const std::int64_t R = sum_r(tree.r);
  // Level 1 has no discard; levels k+1 >= 2 are checked against y_k.
  for (std::size_t lv = 2; lv < tree.levels.size(); ++lv) {
    std::vector<std::size_t> per(tree.levels[lv - 1].survivors, 0);
    for (auto p : tree.parent_[lv]) ++per[p];
    const Rational x = (tree.levels[lv].Ylog - tree.levels[lv - 1].Ylog) * R;
    for (std::size_t p = 0; p < per.size(); ++p)
      if (!meets_bound(per[p], c1, q, x)) {
        rep.ok = false;
        rep.violations.push_back("level " + std::to_string(lv) + " parent " + std::to_string(p) + ": " +
                                 std::to_string(per[p]) + " survivors");
        break;
      }
    // Total: |J_k| >= c1^{k-1} q^{|r|(Ylog_k - Ylog_1)}.
    Rational c1pow(1);
    for (std::size_t i = 1; i < lv; ++i) c1pow *= c1;
    if (!meets_bound(tree.levels[lv].survivors, c1pow, q, (tree.levels[lv].Ylog - tree.levels[1].Ylog) * R))
      rep.total_ok = false;
  }
  rep.ok = rep.ok && rep.total_ok;
  return rep;
}

DimEstimate dim_lower_bound(const BestApproxSeq& seqT, std::int64_t delta_log, const SubseqPlan& plan,
                            std::uint32_t q, std::size_t m, std::int64_t min_r) {
  DimEstimate e;
  const Rational c1 = cantor_c1(q, m, delta_log);
  if (c1 <= 0) throw PreconditionError("dimension bound: c1 <= 0");
  // c1 = q^{-k} exactly?
  mp::cpp_int den(c1.denominator()), pw = 1;
  std::int64_t k = 0;
  while (pw < den) {
    pw *= q;
    ++k;
  }
  if (c1.numerator() == 1 && pw == den) {
    e.C = Rational(k, min_r);
    e.C_exact = true;
  } else {
    // Smallest K with c1^64 q^K >= 1, so -log_q c1 <= K/64.
    const mp::cpp_int n64 = ipow(mp::cpp_int(c1.numerator()), 64), d64 = ipow(mp::cpp_int(c1.denominator()), 64);
    std::int64_t K = std::max<std::int64_t>(
        0, static_cast<std::int64_t>(std::floor(-64.0 * std::log(static_cast<double>(c1.numerator()) /
                                                                  static_cast<double>(c1.denominator())) /
                                                std::log(static_cast<double>(q)))) - 2);
    while (n64 * ipow(mp::cpp_int(q), K) < d64) ++K;
    e.C = Rational(K, 64 * min_r);
  }
  Rational worst(0);
  bool finite = !plan.phi.empty();
  for (std::size_t i = 1; i <= plan.phi.size(); ++i) {
    const LogVal& y = seqT.Y(plan.phi[i - 1]);
    if (y.is_neg_inf() || y.value() <= 0) {
      finite = false;
      break;
    }
    worst = std::max(worst, Rational(static_cast<std::int64_t>(i)) / y.value());
  }
  if (finite) {
    e.slope = worst;
    e.bound = Rational(static_cast<std::int64_t>(m)) - e.C * worst;
  }
  return e;
}

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t count) {
  std::vector<std::size_t> out;
  if (count >= n) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(i);
    return out;
  }
  for (std::size_t i = 0; i < count; ++i) out.push_back(i * n / count);
  return out;
}

std::string digit_string(const Field& F, const std::vector<Fq>& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (F.q() > 10 && i) s += '.';
    s += std::to_string(d[i].index);
  }
  return s;
}

}  // namespace ffapprox
