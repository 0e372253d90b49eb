#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ffapprox/geometry.hpp"

namespace ffapprox {

// A lattice basis (columns) plus an optional translation; a grid is
// basis * R_v^d + translation.
struct Grid {
  LaurentMatrix basis;
  VecKv translation;  // empty for a lattice

  bool is_lattice() const { return translation.empty(); }
};

// u_A = [[I, A], [0, I]] (unimodular, covolume that of R_v^d).
Grid make_uA_lattice(const LaurentMatrix& A);
// u_A R_v^d - (theta, 0).
Grid make_target_grid(const LaurentMatrix& A, const VecKv& theta);
// a^ell = diag(Z^{ell r}, Z^{-ell s}) applied to the grid.
Grid apply_flow(const Grid& g, const WeightedNormContext& ctx, std::int64_t ell);

// rs-systole of the lattice exceeds eps.
bool in_X_gt_eps(const Grid& g, const WeightedNormContext& ctx, const Rational& eps_log);

// Arithmetic side of the correspondence: some (p, y) != 0 with
// ||p + A y||_r <= eps - ell and ||y||_s <= eps + ell.
bool dani_arithmetic(const LaurentMatrix& A, const WeightedNormContext& ctx, const Rational& eps_log,
                     std::int64_t ell);

struct TrajectoryRow {
  std::int64_t ell;
  LogVal systole;
  bool in_X;        // systole > eps
  bool arithmetic;  // short (p, y) exists
  bool consistent;  // in_X == !arithmetic
};
struct Trajectory {
  std::vector<TrajectoryRow> rows;
  Rational outside_fraction;  // share of ell with systole <= eps
  std::size_t mismatches = 0;
};
// ell = 1..N; rows are computed independently on `workers` threads.
Trajectory dani_trajectory(const LaurentMatrix& A, const WeightedNormContext& ctx, const Rational& eps_log,
                           std::int64_t N, std::size_t workers = 1);

struct LMembership {
  bool in_L = true;
  std::optional<LatticeVector> witness;  // grid vector in the eps-box when not in L
};
// Grid avoids {(theta, xi) : (d/m)||theta||_r < eps and (d/n)||xi||_s < eps}.
// The zero vector counts.
LMembership in_L_eps(const Grid& g, const WeightedNormContext& ctx, const Rational& eps_log);

enum class Alternative { kNone, kExact, kApparent };

struct EventualReport {
  std::int64_t T = 0, N = 0;
  std::optional<std::int64_t> first_failure;  // first ell in [T, N] outside L
  std::size_t failures = 0;
  Alternative alt = Alternative::kNone;       // theta in A y + R^m for a short y
  PolyVec alt_y;
  bool prop_holds = false;                    // alternative or no failure
};
// alt_horizon bounds ||y||_s for the search of the alternative.
EventualReport eventually_in_L_eps(const LaurentMatrix& A, const VecKv& theta, const WeightedNormContext& ctx,
                                   const Rational& eps_log, std::int64_t T, std::int64_t N,
                                   const Rational& alt_horizon);

struct EpsBadResult {
  bool bad = true;              // no violation up to the horizon
  std::optional<PolyVec> witness;
  LogVal witness_norm;          // ||x||_s
  LogVal witness_dist;          // <A x - theta>_r
};
// Search for x != 0 with ||x||_s <= horizon and ||x||_s + <Ax - theta>_r < eps;
// returns the witness of smallest norm (lexicographically first).
EpsBadResult is_eps_bad(const LaurentMatrix& A, const VecKv& theta, const WeightedNormContext& ctx,
                        const Rational& eps_log, const Rational& horizon);

}  // namespace ffapprox
