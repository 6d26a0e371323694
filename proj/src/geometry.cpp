#include "maxcov/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <unordered_map>

namespace maxcov {

void validate_points(std::span<const WeightedPoint> points) {
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& p = points[k];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InputError("point " + std::to_string(k) + " has a non-finite coordinate");
    }
    if (!std::isfinite(p.w) || p.w < 0.0) {
      throw InputError("point " + std::to_string(k) + " has a negative or non-finite weight");
    }
  }
}

void validate_shape(const RectShape& shape) {
  if (!(shape.a > 0.0) || !(shape.b > 0.0) || !std::isfinite(shape.a) ||
      !std::isfinite(shape.b)) {
    throw InputError("rectangle width and height must be positive and finite");
  }
}

NormalizedInput normalize(std::span<const WeightedPoint> points, const RectShape& shape) {
  validate_shape(shape);
  validate_points(points);
  NormalizedInput out;
  out.scale = {shape.a, shape.b};
  out.points.assign(points.begin(), points.end());
  if (shape.a == 1.0 && shape.b == 1.0) return out;
  for (auto& p : out.points) {
    p.x /= shape.a;
    p.y /= shape.b;
  }
  return out;
}

std::vector<Placement> denormalize(std::span<const Placement> placements,
                                   const ScaleFactors& scale) {
  std::vector<Placement> out(placements.begin(), placements.end());
  for (auto& p : out) {
    p.x *= scale.sx;
    p.y *= scale.sy;
  }
  return out;
}

namespace {

// Doubles mapped to integers in the same order.
std::int64_t ordered_bits(double d) {
  std::int64_t i;
  std::memcpy(&i, &d, sizeof i);
  return i < 0 ? std::numeric_limits<std::int64_t>::min() - i : i;
}

double from_ordered_bits(std::int64_t i) {
  if (i < 0) i = std::numeric_limits<std::int64_t>::min() - i;
  double d;
  std::memcpy(&d, &i, sizeof d);
  return d;
}

}  // namespace

double lowest_anchor(double v, double extent) {
  auto reaches = [&](double lo) { return lo + extent >= v; };
  double hi = v - extent;
  while (!reaches(hi)) hi = std::nextafter(hi, INFINITY);
  // Bracket from below, then bisect on the ordered bit pattern.
  double step = 4 * std::numeric_limits<double>::epsilon() *
                std::max({std::fabs(v), std::fabs(extent), std::numeric_limits<double>::min()});
  double lo = hi - step;
  while (reaches(lo)) {
    step *= 2;
    lo = hi - step;
  }
  std::int64_t a = ordered_bits(lo);  // fails
  std::int64_t b = ordered_bits(hi);  // reaches
  while (b - a > 1) {
    const std::int64_t mid = a + (b - a) / 2;
    if (reaches(from_ordered_bits(mid))) {
      b = mid;
    } else {
      a = mid;
    }
  }
  return from_ordered_bits(b);
}

namespace {

constexpr std::size_t kDirectScanLimit = 16;

double cover_weight_direct(std::span<const WeightedPoint> points,
                           std::span<const Placement> placements, const RectShape& shape) {
  double sum = 0.0;
  for (const auto& q : points) {
    for (const auto& p : placements) {
      if (box_contains(p, shape, q)) {
        sum += q.w;
        break;
      }
    }
  }
  return sum;
}

}  // namespace

double cover_weight(std::span<const WeightedPoint> points, std::span<const Placement> placements,
                    const RectShape& shape) {
  if (placements.empty() || points.empty()) return 0.0;
  if (placements.size() <= kDirectScanLimit) {
    return cover_weight_direct(points, placements, shape);
  }

  // Bucket boxes by the shape-sized cell holding their anchor. A box holding
  // q has its anchor in [q - extent, q], i.e. in one of three columns (and
  // rows) ending at q's own.
  std::unordered_map<CellIndex, std::vector<std::size_t>, CellIndexHash> by_cell;
  by_cell.reserve(placements.size());
  for (std::size_t k = 0; k < placements.size(); ++k) {
    const CellIndex c{static_cast<std::int64_t>(std::floor(placements[k].x / shape.a)),
                      static_cast<std::int64_t>(std::floor(placements[k].y / shape.b))};
    by_cell[c].push_back(k);
  }

  double sum = 0.0;
  for (const auto& q : points) {
    const auto ci = static_cast<std::int64_t>(std::floor(q.x / shape.a));
    const auto cj = static_cast<std::int64_t>(std::floor(q.y / shape.b));
    bool covered = false;
    for (std::int64_t di = -2; di <= 0 && !covered; ++di) {
      for (std::int64_t dj = -2; dj <= 0 && !covered; ++dj) {
        const auto it = by_cell.find({ci + di, cj + dj});
        if (it == by_cell.end()) continue;
        for (const std::size_t k : it->second) {
          if (box_contains(placements[k], shape, q)) {
            covered = true;
            break;
          }
        }
      }
    }
    if (covered) sum += q.w;
  }
  return sum;
}

std::vector<CellBucket> bucket_cells(std::span<const WeightedPoint> points, const GridSpec& grid) {
  if (!(grid.delta > 0.0)) throw InputError("grid mesh size must be positive");
  std::unordered_map<CellIndex, std::size_t, CellIndexHash> slot;
  slot.reserve(points.size());
  std::vector<CellBucket> buckets;
  for (const auto& p : points) {
    const CellIndex c = cell_index(p, grid);
    const auto [it, inserted] = slot.try_emplace(c, buckets.size());
    if (inserted) buckets.push_back({c, {}});
    buckets[it->second].points.push_back(p);
  }
  return buckets;
}

double total_weight(std::span<const WeightedPoint> points) {
  double sum = 0.0;
  for (const auto& p : points) sum += p.w;
  return sum;
}

}  // namespace maxcov
