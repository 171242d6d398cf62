#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "wulffkit/vec3.hpp"

namespace testutil {

inline wulffkit::Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  for (;;) {
    const wulffkit::Vec3 v{g(rng), g(rng), g(rng)};
    const double n = wulffkit::norm(v);
    if (n > 1e-6) return v / n;
  }
}

inline std::vector<wulffkit::Vec3> random_units(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<wulffkit::Vec3> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_unit(rng));
  return out;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testutil
