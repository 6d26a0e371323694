#include "maxcov/partition.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "maxcov/selection.hpp"

namespace maxcov {

namespace {

using Entry = std::pair<double, double>;

std::vector<Entry> merge_equal(std::span<const Entry> coords) {
  std::unordered_map<double, std::size_t> slot;
  slot.reserve(coords.size());
  std::vector<Entry> merged;
  merged.reserve(coords.size());
  for (const auto& [x, w] : coords) {
    if (w <= 0.0) continue;
    const auto [it, inserted] = slot.try_emplace(x, merged.size());
    if (inserted) {
      merged.emplace_back(x, w);
    } else {
      merged[it->second].second += w;
    }
  }
  return merged;
}

double sum_weights(std::span<const Entry> v) {
  double s = 0.0;
  for (const auto& e : v) s += e.second;
  return s;
}

// Splits v (distinct values) at its weighted median, then recurses on each
// side heavier than w_d. The two sides are the subranges around the median.
void split(std::span<Entry> v, double w_d, int level, StripPartition& out) {
  out.depth = std::max(out.depth, level);
  const std::size_t mid = weighted_median_partition(v);
  out.lines.push_back(v[mid].first);
  const auto left = v.first(mid);
  const auto right = v.subspan(mid + 1);
  if (sum_weights(left) > w_d) split(left, w_d, level + 1, out);
  if (sum_weights(right) > w_d) split(right, w_d, level + 1, out);
}

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::size_t refined_index(const std::vector<double>& lines, double v) {
  if (lines.empty()) return 0;
  const auto it = std::lower_bound(lines.begin(), lines.end(), v);
  if (it == lines.end()) return 2 * (lines.size() - 1);
  const auto l = static_cast<std::size_t>(it - lines.begin());
  if (*it == v) return 2 * l;
  if (l == 0) return 0;
  return 2 * l - 1;
}

}  // namespace

StripPartition partition_axis(std::span<const std::pair<double, double>> coords, double w_d) {
  if (!(w_d > 0.0) || !std::isfinite(w_d)) {
    throw InputError("partition threshold must be positive and finite");
  }
  StripPartition out;
  out.threshold = w_d;
  std::vector<Entry> merged = merge_equal(coords);
  if (sum_weights(merged) > w_d) split(merged, w_d, 1, out);
  sort_unique(out.lines);
  return out;
}

std::vector<double> strip_weights(std::span<const std::pair<double, double>> coords,
                                  std::span<const double> lines) {
  std::vector<double> out(lines.empty() ? 0 : lines.size() - 1, 0.0);
  for (const auto& [x, w] : coords) {
    const auto it = std::upper_bound(lines.begin(), lines.end(), x);
    if (it == lines.begin() || it == lines.end()) continue;
    const auto hi = static_cast<std::size_t>(it - lines.begin());
    if (lines[hi - 1] < x) out[hi - 1] += w;
  }
  return out;
}

CellPartition::CellPartition(std::vector<double> xs, std::vector<double> ys,
                             std::vector<double> weights, double threshold,
                             std::size_t point_count)
    : xs_(std::move(xs)),
      ys_(std::move(ys)),
      weights_(std::move(weights)),
      threshold_(threshold),
      point_count_(point_count) {
  if (xs_.empty() || ys_.empty()) throw InputError("cell partition needs at least one line per axis");
  if (weights_.size() != refined_cols() * refined_rows()) {
    throw InputError("cell partition weight matrix has the wrong size");
  }
  for (const double w : weights_) total_ += w;
}

std::size_t CellPartition::refined_col(double x) const { return refined_index(xs_, x); }
std::size_t CellPartition::refined_row(double y) const { return refined_index(ys_, y); }

std::vector<double> cell_axis_lines(std::span<const std::pair<double, double>> coords,
                                    double w_d, double lo, double hi) {
  std::vector<double> lines{lo, hi};
  if (w_d > 0.0) {
    std::vector<Entry> light;
    light.reserve(coords.size());
    for (const auto& e : coords) {
      if (e.second >= w_d) {
        lines.push_back(e.first);
      } else {
        light.push_back(e);
      }
    }
    const StripPartition strips = partition_axis(light, w_d);
    lines.insert(lines.end(), strips.lines.begin(), strips.lines.end());
  }
  sort_unique(lines);
  return lines;
}

CellPartition build_cell_partition(std::span<const WeightedPoint> points, double weight_fraction,
                                   const Box& cell) {
  if (points.empty()) throw InputError("cannot partition an empty cell");
  if (!(weight_fraction > 0.0)) throw InputError("partition weight fraction must be positive");

  Box box = cell;
  double total = 0.0;
  for (const auto& p : points) {
    box.x0 = std::min(box.x0, p.x);
    box.x1 = std::max(box.x1, p.x);
    box.y0 = std::min(box.y0, p.y);
    box.y1 = std::max(box.y1, p.y);
    total += p.w;
  }
  const double w_d = total * weight_fraction;

  std::vector<Entry> xc(points.size());
  std::vector<Entry> yc(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    xc[k] = {points[k].x, points[k].w};
    yc[k] = {points[k].y, points[k].w};
  }
  std::vector<double> xs = cell_axis_lines(xc, w_d, box.x0, box.x1);
  std::vector<double> ys = cell_axis_lines(yc, w_d, box.y0, box.y1);

  const std::size_t rows = 2 * ys.size() - 1;
  std::vector<double> weights((2 * xs.size() - 1) * rows, 0.0);
  for (const auto& p : points) {
    weights[refined_index(xs, p.x) * rows + refined_index(ys, p.y)] += p.w;
  }
  return CellPartition(std::move(xs), std::move(ys), std::move(weights), w_d, points.size());
}

}  // namespace maxcov
