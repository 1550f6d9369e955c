#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace vfts {

// Fixture generators. Coordinates are derived from raw mt19937_64 draws so a
// seed pins the output bytes independently of any library distribution.

inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::vector<std::vector<double>> gen_uniform_cube(int n, int dim, std::uint64_t seed) {
  if (n < 1 || dim < 1) throw std::invalid_argument("gen: need n >= 1 and dim >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts)
    for (double& c : p) c = unit_draw(rng);
  return pts;
}

inline std::vector<std::vector<double>> gen_clustered(int n, int dim, std::uint64_t seed) {
  if (n < 1 || dim < 1) throw std::invalid_argument("gen: need n >= 1 and dim >= 1");
  std::mt19937_64 rng(seed);
  int m = std::max(1, n / 8);
  std::vector<std::vector<double>> centers(m, std::vector<double>(dim));
  for (auto& c : centers)
    for (double& x : c) x = unit_draw(rng);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts) {
    const auto& c = centers[rng() % m];
    for (int t = 0; t < dim; ++t) p[t] = c[t] + 0.02 * unit_draw(rng);
  }
  return pts;
}

/// 1-d points at coordinates 2^{i+1} - 2, so consecutive gaps double and the
/// spread is exponential in n.
inline std::vector<std::vector<double>> gen_exp_spread_line(int n) {
  if (n < 1) throw std::invalid_argument("gen: need n >= 1");
  std::vector<std::vector<double>> pts(n, std::vector<double>(1));
  for (int i = 0; i < n; ++i) pts[i][0] = std::ldexp(2.0, i) - 2.0;
  return pts;
}

inline std::vector<std::vector<double>> gen_points(const std::string& kind, int n, int dim,
                                                   std::uint64_t seed) {
  if (kind == "uniform-cube") return gen_uniform_cube(n, dim, seed);
  if (kind == "clustered") return gen_clustered(n, dim, seed);
  if (kind == "exp-spread-line") return gen_exp_spread_line(n);
  throw std::invalid_argument("unknown generator kind '" + kind + "'");
}

}  // namespace vfts
