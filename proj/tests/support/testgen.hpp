#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "ffapprox/fixtures.hpp"
#include "ffapprox/geometry.hpp"

namespace ffapprox::testing {

using fixtures::Rng;

inline std::int64_t pick(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline FieldPtr q23(Rng& rng) { return Field::prime(rng() % 2 ? 2 : 3); }

// Every weight shape with |r| = |s| <= max_sum and m, n <= 2.
inline std::vector<WeightedNormContext> weight_shapes(std::int64_t max_sum) {
  std::vector<std::vector<std::int64_t>> parts;
  for (std::int64_t a = 1; a <= max_sum; ++a) {
    parts.push_back({a});
    for (std::int64_t b = 1; a + b <= max_sum; ++b) parts.push_back({a, b});
  }
  std::vector<WeightedNormContext> out;
  for (const auto& r : parts)
    for (const auto& s : parts) {
      std::int64_t sr = 0, ss = 0;
      for (auto x : r) sr += x;
      for (auto x : s) ss += x;
      if (sr == ss) out.emplace_back(r, s);
    }
  return out;
}

inline WeightedNormContext random_weights(Rng& rng, std::int64_t max_sum) {
  static const auto shapes4 = weight_shapes(4);
  for (;;) {
    const auto& c = shapes4[rng() % shapes4.size()];
    if (c.sum_r() <= max_sum) return c;
  }
}

}  // namespace ffapprox::testing
