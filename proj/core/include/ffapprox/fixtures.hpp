#pragma once

#include <cstdint>
#include <random>

#include "ffapprox/geometry.hpp"

namespace ffapprox::fixtures {

// The root of a^2 + Z a - 1 = 0 in Z^{-1}F_q[[Z^{-1}]], continued fraction
// [0; Z, Z, ...]. Truncated to prec coefficients.
Laurent alpha_quad_series(const FieldPtr& f, std::int64_t prec = 512);
// sum_{1 <= i <= max_i} Z^{-i!}. With prec = 0 the finite sum as an exact
// rational function, otherwise a series truncated at exponent prec.
Laurent liouville_series(const FieldPtr& f, int max_i, std::int64_t prec = 0);

LaurentMatrix one_by_one(const Laurent& x);
LaurentMatrix alpha_quad(const FieldPtr& f, std::int64_t prec = 512);
// All factorials up to prec, truncated at prec.
LaurentMatrix liouville(const FieldPtr& f, std::int64_t prec = 5000);
LaurentMatrix inv_Z(const FieldPtr& f);
// diag(Z, Z^{-1})
LaurentMatrix diag_Z(const FieldPtr& f);

using Rng = std::mt19937_64;

Fq random_element(const Field& F, Rng& rng);
Poly random_poly(const FieldPtr& f, std::int64_t max_deg, Rng& rng);
// Random series in Z^{-1} F_q[[Z^{-1}]] with `prec` known coefficients.
Laurent random_series(const FieldPtr& f, std::int64_t prec, Rng& rng);
// Random proper-ish rational function num/den with deg den <= max_deg.
RatFunc random_ratfunc(const FieldPtr& f, std::int64_t max_deg, Rng& rng);
LaurentMatrix random_series_matrix(const FieldPtr& f, std::size_t m, std::size_t n, std::int64_t prec, Rng& rng);
// Nonsingular square matrix of polynomials (exact), entry degree <= max_deg,
// optionally scaled by Z^{-shift} per row.
LaurentMatrix random_lattice(const FieldPtr& f, std::size_t d, std::int64_t max_deg, Rng& rng,
                             std::int64_t max_shift = 0);

}  // namespace ffapprox::fixtures
