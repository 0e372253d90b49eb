#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffapprox/bestapprox.hpp"
#include "ffapprox/geometry.hpp"

namespace ffapprox {

// Digits of a cell corner: digits[j][u-1] is the coefficient of Z^{-u} in
// coordinate j, u = 1..n_j.
using CellDigits = std::vector<std::vector<Fq>>;

struct CantorLevel {
  std::vector<std::int64_t> nvec;  // n_{k,j} = ceil(r_j Ylog_k)
  Rational Ylog;                   // ||y_k||_r (0 for the root)
  std::size_t parents = 0;         // cells at level k-1
  std::size_t survivors = 0;       // cells at level k
  std::size_t min_children = 0;    // fewest survivors under one parent
  bool bound_ok = true;            // per-parent survivor bound
};

class CellTree {
 public:
  FieldPtr field;
  std::vector<std::int64_t> r;
  Rational delta_log;
  std::vector<PolyVec> ys;           // y_1, y_2, ...
  std::vector<CantorLevel> levels;   // levels[0] is the root
  bool truncated_by_budget = false;
  std::size_t budget = 0;

  std::size_t depth() const { return levels.size() - 1; }
  std::size_t count(std::size_t level) const { return levels[level].survivors; }
  CellDigits digits(std::size_t level, std::size_t idx) const;
  VecKv corner(std::size_t level, std::size_t idx) const;
  // Parent index at level-1.
  std::size_t parent(std::size_t level, std::size_t idx) const { return parent_[level][idx]; }

  // Storage: for level k >= 1, parent index and the code of the new digits.
  std::vector<std::vector<std::uint32_t>> parent_;
  std::vector<std::vector<std::uint64_t>> code_;
};

// c1 = q^{-m} - q^{2m + delta_log}.
Rational cantor_c1(std::uint32_t q, std::size_t m, std::int64_t delta_log);

// Builds levels 0..levels of the Cantor construction from ys (which must grow
// by b = -delta_log / min r in ||.||_r). delta_log must be an integer below -3m.
// Stops with truncated_by_budget once the total number of cells would exceed
// `budget`.
CellTree build_cantor(FieldPtr f, const std::vector<PolyVec>& ys, const std::vector<std::int64_t>& r,
                      std::int64_t delta_log, std::size_t levels, std::size_t budget = std::size_t{1} << 24,
                      std::size_t workers = 1);

// Corner test against Z_{k,delta}: true if |<y . theta>| < delta.
bool meets_Z(const Field& F, const PolyVec& y, const CellDigits& theta, std::int64_t delta_log);
// Same, by Laurent arithmetic on the corner; used as an independent check.
bool meets_Z_laurent(FieldPtr f, const PolyVec& y, const CellDigits& theta, std::int64_t delta_log);
VecKv digits_to_kv(FieldPtr f, const CellDigits& d);

struct SurvivorReport {
  bool ok = true;
  std::vector<std::string> violations;
  bool total_ok = true;  // total survivors >= c1^k (Y_{k+1}/Y_1)^{|r|}
};
// Recounts each parent's surviving children and compares exactly with
// c1 q^{|r| (Ylog_{k+1} - Ylog_k)}.
SurvivorReport survivor_bound_check(const CellTree& tree);

struct DimEstimate {
  Rational C;               // -log_q(c1)/min r, or a certified upper bound
  bool C_exact = false;
  std::optional<Rational> slope;  // prefix max of k / Ylog_{phi(k)}; none if some Ylog is 0
  std::optional<Rational> bound;  // m - C slope
};
DimEstimate dim_lower_bound(const BestApproxSeq& seqT, std::int64_t delta_log, const SubseqPlan& plan,
                            std::uint32_t q, std::size_t m, std::int64_t min_r);

// Evenly spaced indices into [0, n).
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t count);
std::string digit_string(const Field& F, const std::vector<Fq>& d);

}  // namespace ffapprox
