#include "maxcov/single_cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "parallel.hpp"

namespace maxcov {

namespace {

// Segment tree over anchor positions supporting range add and a global
// maximum with its leftmost position.
class MaxAddTree {
 public:
  explicit MaxAddTree(std::size_t n) : n_(n), max_(4 * n, 0.0), arg_(4 * n, 0), lazy_(4 * n, 0.0) {
    if (n_ > 0) build(1, 0, n_ - 1);
  }

  void add(std::size_t l, std::size_t r, double w) { add(1, 0, n_ - 1, l, r, w); }

  double top_value() const { return max_[1]; }
  std::size_t top_index() const { return arg_[1]; }

 private:
  void build(std::size_t node, std::size_t lo, std::size_t hi) {
    arg_[node] = lo;
    if (lo == hi) return;
    const std::size_t mid = lo + (hi - lo) / 2;
    build(2 * node, lo, mid);
    build(2 * node + 1, mid + 1, hi);
  }

  void pull(std::size_t node) {
    const std::size_t a = 2 * node;
    const std::size_t b = 2 * node + 1;
    if (max_[a] >= max_[b]) {
      max_[node] = max_[a] + lazy_[node];
      arg_[node] = arg_[a];
    } else {
      max_[node] = max_[b] + lazy_[node];
      arg_[node] = arg_[b];
    }
  }

  void add(std::size_t node, std::size_t lo, std::size_t hi, std::size_t l, std::size_t r,
           double w) {
    if (r < lo || hi < l) return;
    if (l <= lo && hi <= r) {
      max_[node] += w;
      lazy_[node] += w;
      return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    add(2 * node, lo, mid, l, r, w);
    add(2 * node + 1, mid + 1, hi, l, r, w);
    pull(node);
  }

  std::size_t n_;
  std::vector<double> max_;
  std::vector<std::size_t> arg_;
  std::vector<double> lazy_;
};

// Sliding sums over [k, reach[k]] for k = 0..n-1, with reach non-decreasing
// and reach[k] >= k. `at(t)` yields the t-th element.
template <class At>
void sliding_window_sums(std::size_t n, const std::vector<std::size_t>& reach, At at,
                         std::vector<double>& out) {
  out.assign(n, 0.0);
  double sum = 0.0;
  std::size_t l = 0;
  std::size_t r_end = 0;  // window is [l, r_end)
  for (std::size_t k = 0; k < n; ++k) {
    while (l < k) {
      if (l < r_end) sum -= at(l);
      ++l;
    }
    if (r_end < l) {
      r_end = l;
      sum = 0.0;
    }
    while (r_end <= reach[k]) sum += at(r_end++);
    out[k] = sum;
  }
}

bool better_cell(double w, const CellIndex& c, std::size_t grid, double best_w,
                 const CellIndex& best_c, std::size_t best_grid) {
  if (w != best_w) return w > best_w;
  if (grid != best_grid) return grid < best_grid;
  return c < best_c;
}

}  // namespace

void validate_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon <= 1.0)) throw InputError("epsilon must lie in (0, 1]");
}

CandidateGrid make_candidate_grid(const CellPartition& partition) {
  CandidateGrid g;
  g.cols = partition.refined_cols();
  g.rows = partition.refined_rows();
  g.weights = partition.weights();
  g.anchor_stride = 2;

  auto reach = [](const std::vector<double>& lines, std::size_t n_refined) {
    std::vector<std::size_t> out(n_refined);
    for (std::size_t l = 0; l < lines.size(); ++l) {
      const auto last = static_cast<std::size_t>(
          std::upper_bound(lines.begin(), lines.end(), lines[l] + 1.0) - lines.begin() - 1);
      out[2 * l] = 2 * last;
      if (2 * l + 1 < n_refined) out[2 * l + 1] = std::max(2 * l + 1, 2 * last);
    }
    return out;
  };
  g.X = reach(partition.xs(), g.cols);
  g.Y = reach(partition.ys(), g.rows);
  return g;
}

WindowChoice scan_best_window(const CandidateGrid& grid) {
  WindowChoice best{0, 0, -std::numeric_limits<double>::infinity()};
  if (grid.cols == 0 || grid.rows == 0) return {0, 0, 0.0};
  const std::size_t stride = std::max<std::size_t>(1, grid.anchor_stride);

  // H(i, j): per-column sums over rows j..Y[j], kept only for eligible rows
  // and stored row-major so the second pass reads rows contiguously.
  const std::size_t eligible_rows = (grid.rows + stride - 1) / stride;
  std::vector<double> h(eligible_rows * grid.cols);
  std::vector<double> col;
  for (std::size_t i = 0; i < grid.cols; ++i) {
    const double* w = grid.weights.data() + i * grid.rows;
    sliding_window_sums(
        grid.rows, grid.Y, [w](std::size_t t) { return w[t]; }, col);
    for (std::size_t r = 0; r < eligible_rows; ++r) h[r * grid.cols + i] = col[r * stride];
  }

  // I(i, j): per-row sums of H over columns i..X[i].
  std::vector<double> row;
  for (std::size_t r = 0; r < eligible_rows; ++r) {
    const double* hr = h.data() + r * grid.cols;
    sliding_window_sums(
        grid.cols, grid.X, [hr](std::size_t t) { return hr[t]; }, row);
    const std::size_t j = r * stride;
    for (std::size_t i = 0; i < grid.cols; i += stride) {
      const double v = row[i];
      if (v > best.value || (v == best.value && (i < best.i || (i == best.i && j < best.j)))) {
        best = {i, j, v};
      }
    }
  }
  return best;
}

CoverageSolution exact_single(std::span<const WeightedPoint> points) {
  CoverageSolution sol;
  if (points.empty()) return sol;
  const std::size_t n = points.size();

  std::vector<double> lox(n);
  std::vector<double> loy(n);
  for (std::size_t k = 0; k < n; ++k) {
    lox[k] = lowest_anchor(points[k].x, 1.0);
    loy[k] = lowest_anchor(points[k].y, 1.0);
  }
  // The deepest point of the anchor arrangement sits on some left edge.
  std::vector<double> xs = lox;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<std::size_t> lx(n);
  std::vector<std::size_t> rx(n);
  for (std::size_t k = 0; k < n; ++k) {
    lx[k] = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), lox[k]) - xs.begin());
    rx[k] = static_cast<std::size_t>(
        std::upper_bound(xs.begin(), xs.end(), points[k].x) - xs.begin() - 1);
  }

  std::vector<std::size_t> by_start(n);
  std::iota(by_start.begin(), by_start.end(), 0);
  std::vector<std::size_t> by_end = by_start;
  std::stable_sort(by_start.begin(), by_start.end(),
                   [&](std::size_t a, std::size_t b) { return loy[a] < loy[b]; });
  std::stable_sort(by_end.begin(), by_end.end(),
                   [&](std::size_t a, std::size_t b) { return points[a].y < points[b].y; });

  MaxAddTree tree(xs.size());
  double best = -1.0;
  Placement where;
  std::size_t s = 0;
  std::size_t e = 0;
  while (s < n) {
    const double v = loy[by_start[s]];
    while (e < n && points[by_end[e]].y < v) {
      const std::size_t k = by_end[e++];
      tree.add(lx[k], rx[k], -points[k].w);
    }
    while (s < n && loy[by_start[s]] == v) {
      const std::size_t k = by_start[s++];
      tree.add(lx[k], rx[k], points[k].w);
    }
    if (tree.top_value() > best) {
      best = tree.top_value();
      where = {xs[tree.top_index()], v};
    }
  }
  sol.placements.push_back(where);
  sol.estimate = best;
  sol.weight = cover_weight(points, sol.placements);
  return sol;
}

CoverageSolution maxcov_cell(std::span<const WeightedPoint> points, double epsilon,
                             const Box& cell) {
  validate_epsilon(epsilon);
  CoverageSolution sol;
  if (points.empty()) return sol;
  const double small_limit = 1.0 / (epsilon * epsilon);
  if (static_cast<double>(points.size()) < small_limit) {
    sol = exact_single(points);
    sol.estimate = sol.weight;
    sol.stats.exact_cells = 1;
    return sol;
  }
  const CellPartition partition = build_cell_partition(points, epsilon / 16.0, cell);
  const WindowChoice choice = scan_best_window(make_candidate_grid(partition));
  sol.placements.push_back({partition.xs()[choice.i / 2], partition.ys()[choice.j / 2]});
  sol.estimate = choice.value;
  sol.weight = cover_weight(points, sol.placements);
  sol.stats.partitioned_cells = 1;
  return sol;
}

std::vector<GridSpec> single_shift_grids() {
  return {{2.0, 0.0, 0.0}, {2.0, 0.0, 1.0}, {2.0, 1.0, 0.0}, {2.0, 1.0, 1.0}};
}

CoverageSolution maxcov_single(std::span<const WeightedPoint> points, double epsilon,
                               const SolverOptions& options) {
  validate_epsilon(epsilon);
  validate_points(points);
  CoverageSolution best;
  if (points.empty()) return best;

  double best_w = -1.0;
  CellIndex best_cell;
  std::size_t best_grid = 0;
  const auto grids = single_shift_grids();
  for (std::size_t g = 0; g < grids.size(); ++g) {
    const auto buckets = bucket_cells(points, grids[g]);
    std::vector<CoverageSolution> results(buckets.size());
    detail::parallel_for(buckets.size(), options.threads, [&](std::size_t k) {
      results[k] = maxcov_cell(buckets[k].points, epsilon, cell_box(buckets[k].index, grids[g]));
    });
    best.stats.grids += 1;
    best.stats.cells += buckets.size();
    for (std::size_t k = 0; k < buckets.size(); ++k) {
      best.stats.exact_cells += results[k].stats.exact_cells;
      best.stats.partitioned_cells += results[k].stats.partitioned_cells;
      if (better_cell(results[k].weight, buckets[k].index, g, best_w, best_cell, best_grid)) {
        best_w = results[k].weight;
        best_cell = buckets[k].index;
        best_grid = g;
        best.placements = results[k].placements;
        best.estimate = results[k].estimate;
        best.grid_shift = grids[g];
      }
    }
  }
  best.weight = cover_weight(points, best.placements);
  return best;
}

}  // namespace maxcov
