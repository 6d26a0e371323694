#include "maxcov/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

namespace maxcov {

namespace {

std::vector<double> canonical_coords(std::span<const WeightedPoint> points, bool use_x) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(lowest_anchor(use_x ? p.x : p.y, 1.0));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct CoveredSet {
  Placement anchor;
  std::vector<std::uint64_t> bits;
  double weight = 0.0;
};

struct BitsHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto x : v) {
      h ^= x + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

double union_weight(std::span<const WeightedPoint> points, const std::vector<std::uint64_t>& bits) {
  double sum = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if ((bits[k / 64] >> (k % 64)) & 1U) sum += points[k].w;
  }
  return sum;
}

}  // namespace

CoverageSolution oracle_single(std::span<const WeightedPoint> points, std::size_t max_points) {
  validate_points(points);
  if (points.size() > max_points) {
    throw InputError("oracle_single refuses " + std::to_string(points.size()) +
                     " points (cap " + std::to_string(max_points) + ")");
  }
  CoverageSolution sol;
  if (points.empty()) return sol;
  const auto xs = canonical_coords(points, true);
  const auto ys = canonical_coords(points, false);
  double best = -1.0;
  for (const double x : xs) {
    for (const double y : ys) {
      const Placement p{x, y};
      const double w = cover_weight(points, std::span<const Placement>(&p, 1));
      if (w > best) {
        best = w;
        sol.placements = {p};
      }
    }
  }
  sol.weight = best;
  sol.estimate = best;
  return sol;
}

CoverageSolution oracle_multi(std::span<const WeightedPoint> points, std::size_t m,
                              const OracleCaps& caps) {
  validate_points(points);
  if (m < 1) throw InputError("m must be at least 1");
  if (points.size() > caps.max_points || m > caps.max_squares) {
    throw InputError("oracle_multi refuses n=" + std::to_string(points.size()) +
                     ", m=" + std::to_string(m) + " (caps n<=" +
                     std::to_string(caps.max_points) + ", m<=" +
                     std::to_string(caps.max_squares) + ")");
  }
  CoverageSolution sol;
  if (points.empty()) return sol;

  const std::size_t words = (points.size() + 63) / 64;
  const auto xs = canonical_coords(points, true);
  const auto ys = canonical_coords(points, false);
  std::vector<CoveredSet> sets;
  std::unordered_map<std::vector<std::uint64_t>, std::size_t, BitsHash> seen;
  for (const double x : xs) {
    for (const double y : ys) {
      CoveredSet s;
      s.anchor = {x, y};
      s.bits.assign(words, 0);
      bool any = false;
      for (std::size_t k = 0; k < points.size(); ++k) {
        if (box_contains(s.anchor, {}, points[k])) {
          s.bits[k / 64] |= std::uint64_t{1} << (k % 64);
          any = true;
        }
      }
      if (!any) continue;
      if (!seen.try_emplace(s.bits, sets.size()).second) continue;
      s.weight = union_weight(points, s.bits);
      sets.push_back(std::move(s));
    }
  }
  std::stable_sort(sets.begin(), sets.end(),
                   [](const CoveredSet& a, const CoveredSet& b) { return a.weight > b.weight; });

  // All m-subsets (fewer if there are fewer distinct sets). Subsets whose
  // optimistic sum cannot beat the incumbent are skipped.
  const std::size_t r = std::min(m, sets.size());
  std::vector<double> suffix(sets.size() + 1, 0.0);
  for (std::size_t i = 0; i < sets.size(); ++i) suffix[i + 1] = suffix[i] + sets[i].weight;
  const double slack = 1e-12 * (total_weight(points) + 1.0);

  double best = -1.0;
  std::vector<std::size_t> chosen;
  std::vector<std::size_t> best_chosen;
  std::vector<std::vector<std::uint64_t>> acc(r + 1, std::vector<std::uint64_t>(words, 0));
  std::vector<double> acc_w(r + 1, 0.0);
  std::function<void(std::size_t)> walk = [&](std::size_t start) {
    const std::size_t depth = chosen.size();
    if (depth == r) {
      if (acc_w[depth] > best) {
        best = acc_w[depth];
        best_chosen = chosen;
      }
      return;
    }
    const std::size_t room = r - depth;
    for (std::size_t i = start; i + room <= sets.size(); ++i) {
      if (acc_w[depth] + (suffix[i + room] - suffix[i]) + slack < best) break;
      for (std::size_t w = 0; w < words; ++w) acc[depth + 1][w] = acc[depth][w] | sets[i].bits[w];
      acc_w[depth + 1] = union_weight(points, acc[depth + 1]);
      chosen.push_back(i);
      walk(i + 1);
      chosen.pop_back();
    }
  };
  walk(0);

  for (const std::size_t i : best_chosen) sol.placements.push_back(sets[i].anchor);
  sol.weight = cover_weight(points, sol.placements);
  sol.estimate = best;
  return sol;
}

}  // namespace maxcov
