#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ffapprox/bestapprox.hpp"
#include "ffapprox/geometry.hpp"

// Exhaustive reference computations for small instances. They share no code
// with the reduction or linear-algebra paths.
namespace ffapprox::oracle {

// Calls fn for every vector of polynomials with deg v_j <= bounds[j]
// (bound -1: always zero), zero vector included. Returns false if the count
// would exceed `cap`.
bool for_each_polyvec(const FieldPtr& f, const std::vector<std::int64_t>& bounds, std::uint64_t cap,
                      const std::function<void(const PolyVec&)>& fn);

// Rank over F_q(Z) of a list of polynomial vectors.
std::size_t rank_over_K(const FieldPtr& f, const std::vector<PolyVec>& vs);

// Successive minima (sup norm) of an exact basis by enumeration; empty if the
// enumeration would exceed `cap`.
std::vector<LogVal> minima(const LaurentMatrix& B, std::uint64_t cap);

// rs-systole by enumeration; nullopt past the cap.
std::optional<LogVal> systole(const LaurentMatrix& B, const WeightedNormContext& ctx, std::uint64_t cap);

// (Ylog_i, Mlog_i) of the greedy sequence with ||y||_s <= horizon, from a
// full enumeration.
std::vector<std::pair<LogVal, LogVal>> best_approx_values(const LaurentMatrix& A, const WeightedNormContext& ctx,
                                                          const Rational& horizon, std::uint64_t cap);

// min over nonzero y with ||y||_s <= level of <A y>_r.
LogVal min_dist_upto(const LaurentMatrix& A, const WeightedNormContext& ctx, const Rational& level,
                     std::uint64_t cap);

}  // namespace ffapprox::oracle
