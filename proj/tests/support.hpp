#ifndef MAXCOV_TESTS_SUPPORT_HPP
#define MAXCOV_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <random>
#include <vector>

#include "maxcov/geometry.hpp"
#include "maxcov/partition.hpp"

namespace maxcov::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Weights are small integers when `integral`, so sums are exact.
inline std::vector<WeightedPoint> uniform_points(Rng& rng, std::size_t n, double extent,
                                                 bool integral = false) {
  std::vector<WeightedPoint> pts;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = uniform(rng, 0.0, extent);
    const double y = uniform(rng, 0.0, extent);
    const double w = integral ? uniform_int(rng, 1, 9) : uniform(rng, 0.05, 1.0);
    pts.push_back({x, y, w});
  }
  return pts;
}

inline std::vector<WeightedPoint> clustered_points(Rng& rng, std::size_t n, double extent,
                                                   bool integral = false) {
  const int clusters = uniform_int(rng, 1, 4);
  std::vector<std::pair<double, double>> centers;
  for (int c = 0; c < clusters; ++c) {
    centers.emplace_back(uniform(rng, 0.0, extent), uniform(rng, 0.0, extent));
  }
  std::normal_distribution<double> spread(0.0, 0.4);
  std::vector<WeightedPoint> pts;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& c = centers[static_cast<std::size_t>(uniform_int(rng, 0, clusters - 1))];
    const double w = integral ? uniform_int(rng, 1, 9) : uniform(rng, 0.05, 1.0);
    pts.push_back({c.first + spread(rng), c.second + spread(rng), w});
  }
  return pts;
}

// Points snapped to a coarse lattice so that ties, duplicates and points on
// box edges are common.
inline std::vector<WeightedPoint> lattice_points(Rng& rng, std::size_t n, int steps, double pitch) {
  std::vector<WeightedPoint> pts;
  for (std::size_t k = 0; k < n; ++k) {
    pts.push_back({uniform_int(rng, 0, steps) * pitch, uniform_int(rng, 0, steps) * pitch,
                   static_cast<double>(uniform_int(rng, 1, 5))});
  }
  return pts;
}

// Sorted distinct lines from lo to hi with `inner` random interior lines.
inline std::vector<double> random_lines(Rng& rng, double lo, double hi, int inner) {
  std::vector<double> v{lo, hi};
  for (int k = 0; k < inner; ++k) v.push_back(uniform(rng, lo, hi));
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// A partition with integer weights on the refined grid, a fraction of them 0.
inline CellPartition random_partition(Rng& rng, int max_lines, double width) {
  auto xs = random_lines(rng, 0.0, width, uniform_int(rng, 0, max_lines - 2));
  auto ys = random_lines(rng, 0.0, width, uniform_int(rng, 0, max_lines - 2));
  const std::size_t cells = (2 * xs.size() - 1) * (2 * ys.size() - 1);
  std::vector<double> w(cells);
  for (auto& v : w) v = uniform_int(rng, 0, 2) == 0 ? 0.0 : uniform_int(rng, 1, 9);
  return CellPartition(std::move(xs), std::move(ys), std::move(w), 1.0, cells);
}

class Digest {
 public:
  void add(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    add_u64(bits);
  }
  void add_u64(std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h_ ^= (v >> (8 * b)) & 0xFFU;
      h_ *= 1099511628211ULL;
    }
  }
  template <class Solution>
  void add_solution(const Solution& s) {
    add(s.weight);
    add_u64(s.placements.size());
    for (const auto& p : s.placements) {
      add(p.x);
      add(p.y);
    }
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 1469598103934665603ULL;
};

}  // namespace maxcov::testing

#endif  // MAXCOV_TESTS_SUPPORT_HPP
