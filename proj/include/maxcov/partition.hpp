#ifndef MAXCOV_PARTITION_HPP
#define MAXCOV_PARTITION_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "maxcov/geometry.hpp"

namespace maxcov {

// Lines on one axis such that the weight strictly between two adjacent lines
// is at most `threshold`.
struct StripPartition {
  std::vector<double> lines;  // sorted, distinct
  double threshold = 0.0;
  // Deepest recursion level reached by the median splitter (0 when no split
  // was needed).
  int depth = 0;
};

// Recursive weighted-median splitter over (coordinate, weight) pairs. Equal
// coordinates are merged before splitting. Every side whose weight exceeds
// w_d is split again at its weighted median; a top-level input of total
// weight <= w_d yields no lines. Throws InputError if w_d <= 0.
StripPartition partition_axis(std::span<const std::pair<double, double>> coords, double w_d);

// Weight strictly between each pair of adjacent lines; size lines.size()-1.
std::vector<double> strip_weights(std::span<const std::pair<double, double>> coords,
                                  std::span<const double> lines);

// Grid of partition lines inside one cell plus aggregated weights.
//
// Weights live on a refined grid in which every line is a degenerate column
// of its own: refined column 2*l holds the points lying exactly on xs[l] and
// refined column 2*l+1 the points strictly between xs[l] and xs[l+1]. Rows
// follow the same scheme for ys. A unit window anchored on lines therefore
// credits exactly the points of the closed small cells it fully contains.
class CellPartition {
 public:
  CellPartition() = default;
  CellPartition(std::vector<double> xs, std::vector<double> ys, std::vector<double> weights,
                double threshold, std::size_t point_count);

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  std::size_t refined_cols() const { return xs_.empty() ? 0 : 2 * xs_.size() - 1; }
  std::size_t refined_rows() const { return ys_.empty() ? 0 : 2 * ys_.size() - 1; }
  // Column-major: weight(c, r) = weights()[c * refined_rows() + r].
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t c, std::size_t r) const { return weights_[c * refined_rows() + r]; }
  double total() const { return total_; }
  double threshold() const { return threshold_; }
  std::size_t point_count() const { return point_count_; }

  // Refined index of a coordinate (clamped into the grid).
  std::size_t refined_col(double x) const;
  std::size_t refined_row(double y) const;

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> weights_;
  double total_ = 0.0;
  double threshold_ = 0.0;
  std::size_t point_count_ = 0;
};

// Lines for one axis of a cell: a line through every point of weight >= w_d,
// the splitter lines of the lighter points, and both cell boundaries.
std::vector<double> cell_axis_lines(std::span<const std::pair<double, double>> coords,
                                    double w_d, double lo, double hi);

// Builds the partition of a cell with threshold w_d = W_c * weight_fraction.
// The cell box is widened to contain every point when round-off put one
// just outside it.
CellPartition build_cell_partition(std::span<const WeightedPoint> points, double weight_fraction,
                                   const Box& cell);

}  // namespace maxcov

#endif  // MAXCOV_PARTITION_HPP
