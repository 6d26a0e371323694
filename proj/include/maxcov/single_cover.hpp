#ifndef MAXCOV_SINGLE_COVER_HPP
#define MAXCOV_SINGLE_COVER_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "maxcov/geometry.hpp"
#include "maxcov/partition.hpp"

namespace maxcov {

struct SolverOptions {
  // Worker threads for independent cells or grids; results do not depend on
  // this value.
  unsigned threads = 1;
};

// A cols x rows weight grid with monotone window maps. The window anchored at
// (i, j) spans columns i..X[i] and rows j..Y[j].
struct CandidateGrid {
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::vector<double> weights;  // column-major, weights[i * rows + j]
  std::vector<std::size_t> X;   // non-decreasing, X[i] >= i
  std::vector<std::size_t> Y;   // non-decreasing, Y[j] >= j
  // Only anchors with i % anchor_stride == 0 and j % anchor_stride == 0 are
  // eligible.
  std::size_t anchor_stride = 1;

  double weight(std::size_t i, std::size_t j) const { return weights[i * rows + j]; }
};

struct WindowChoice {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;
};

// Builds the candidate grid of unit windows anchored on partition lines: the
// refined grid of `partition` with X/Y mapping each line to the last line at
// most one unit beyond it.
CandidateGrid make_candidate_grid(const CellPartition& partition);

// Maximum of I(i,j) = sum_{i<=i'<=X[i]} sum_{j<=j'<=Y[j]} w(i',j') over the
// eligible anchors, by two sliding-window passes. Ties go to the
// lexicographically smallest (i, j).
WindowChoice scan_best_window(const CandidateGrid& grid);

// Exact best placement of one closed unit square (sweep over anchor space
// with a range-add / range-max tree), O(n log n).
CoverageSolution exact_single(std::span<const WeightedPoint> points);

// (1 - epsilon)-approximate best unit square for points inside one cell.
// Small cells (n_c < 1/epsilon^2) are solved exactly; otherwise the cell is
// partitioned with w_d = epsilon * W_c / 16 and the best line-anchored window
// is taken with conservative counting. `weight` is the true coverage of the
// cell's points; `estimate` the conservative value.
CoverageSolution maxcov_cell(std::span<const WeightedPoint> points, double epsilon,
                             const Box& cell);

// The four mesh-2 shifted grids used by the single-square search.
std::vector<GridSpec> single_shift_grids();

// (1 - epsilon)-approximate best unit square over all points.
CoverageSolution maxcov_single(std::span<const WeightedPoint> points, double epsilon,
                               const SolverOptions& options = {});

void validate_epsilon(double epsilon);

}  // namespace maxcov

#endif  // MAXCOV_SINGLE_COVER_HPP
