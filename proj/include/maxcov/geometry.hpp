#ifndef MAXCOV_GEOMETRY_HPP
#define MAXCOV_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace maxcov {

// Raised for malformed or out-of-domain input (bad epsilon, negative
// weight, non-finite coordinate, oracle caps exceeded, ...).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

struct WeightedPoint {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;

  friend bool operator==(const WeightedPoint&, const WeightedPoint&) = default;
};

// Width and height of the rectangles being placed.
struct RectShape {
  double a = 1.0;
  double b = 1.0;
};

// Bottom-left corner of one rectangle. The covered region is the closed box
// [x, x + a] x [y, y + b].
struct Placement {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Placement&, const Placement&) = default;
};

// Square grid with mesh `delta` whose lines pass through x = ax + k*delta and
// y = ay + k*delta.
struct GridSpec {
  double delta = 1.0;
  double ax = 0.0;
  double ay = 0.0;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct CellIndex {
  std::int64_t i = 0;
  std::int64_t j = 0;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

struct CellIndexHash {
  std::size_t operator()(const CellIndex& c) const noexcept {
    // splitmix-style mixing of the two halves
    std::uint64_t h = static_cast<std::uint64_t>(c.i) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(c.j) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    h ^= h >> 31;
    h *= 0xBF58476D1CE4E5B9ULL;
    h ^= h >> 27;
    return static_cast<std::size_t>(h);
  }
};

// Axis-aligned closed box [x0, x1] x [y0, y1]; used to describe grid cells.
struct Box {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;
};

// Counters collected while solving. Only informational; never part of the
// comparison that picks a winner.
struct SolveStats {
  std::size_t grids = 0;
  std::size_t cells = 0;
  std::size_t exact_cells = 0;
  std::size_t partitioned_cells = 0;
  std::size_t selected_cells = 0;
  bool used_greedy = false;
};

struct CoverageSolution {
  std::vector<Placement> placements;
  // Covered weight of `placements` as re-evaluated by cover_weight.
  double weight = 0.0;
  // The solver's own (conservative) value for the placements; never above
  // `weight` beyond accumulation round-off.
  double estimate = 0.0;
  std::optional<GridSpec> grid_shift;
  SolveStats stats;
};

struct ScaleFactors {
  double sx = 1.0;
  double sy = 1.0;
};

struct NormalizedInput {
  std::vector<WeightedPoint> points;
  ScaleFactors scale;
};

void validate_points(std::span<const WeightedPoint> points);
void validate_shape(const RectShape& shape);

// Scales coordinates by (1/a, 1/b) so that the search shape becomes the unit
// square. Weights are untouched.
NormalizedInput normalize(std::span<const WeightedPoint> points, const RectShape& shape);

// Maps unit-square placements back to the original coordinate frame.
std::vector<Placement> denormalize(std::span<const Placement> placements,
                                   const ScaleFactors& scale);

// True iff the closed interval [anchor, anchor + extent] contains `v`, using
// the exact floating-point test every component shares.
inline bool interval_contains(double anchor, double extent, double v) {
  return anchor <= v && v <= anchor + extent;
}

inline bool box_contains(const Placement& p, const RectShape& shape, const WeightedPoint& q) {
  return interval_contains(p.x, shape.a, q.x) && interval_contains(p.y, shape.b, q.y);
}

// Smallest double `lo` with lo + extent >= v in floating point, i.e. the
// lowest anchor whose closed interval still reaches `v`.
double lowest_anchor(double v, double extent);

// Sum of weights of points lying in the union of the closed boxes; each point
// counts once.
double cover_weight(std::span<const WeightedPoint> points, std::span<const Placement> placements,
                    const RectShape& shape = {});

inline CellIndex cell_index(const WeightedPoint& p, const GridSpec& grid) {
  return {static_cast<std::int64_t>(std::floor((p.x - grid.ax) / grid.delta)),
          static_cast<std::int64_t>(std::floor((p.y - grid.ay) / grid.delta))};
}

inline Box cell_box(const CellIndex& c, const GridSpec& grid) {
  return {grid.ax + static_cast<double>(c.i) * grid.delta,
          grid.ay + static_cast<double>(c.j) * grid.delta,
          grid.ax + static_cast<double>(c.i + 1) * grid.delta,
          grid.ay + static_cast<double>(c.j + 1) * grid.delta};
}

struct CellBucket {
  CellIndex index;
  std::vector<WeightedPoint> points;
};

// Groups points by grid cell. Buckets come out in order of first appearance
// in `points`; only non-empty cells are produced.
std::vector<CellBucket> bucket_cells(std::span<const WeightedPoint> points, const GridSpec& grid);

double total_weight(std::span<const WeightedPoint> points);

}  // namespace maxcov

#endif  // MAXCOV_GEOMETRY_HPP
