#ifndef MAXCOV_MULTI_COVER_HPP
#define MAXCOV_MULTI_COVER_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "maxcov/geometry.hpp"
#include "maxcov/partition.hpp"
#include "maxcov/single_cover.hpp"

namespace maxcov {

// Rounds epsilon down to the nearest 1/k, k integral.
double snap_epsilon(double epsilon);

// Number of shifted grids and their mesh: 6/epsilon for a snapped epsilon.
std::int64_t shift_count(double epsilon);

// The 6/epsilon grids of mesh 6/epsilon with diagonal offsets (i, i).
// Epsilon is snapped first; throws InputError outside (0, 1].
std::vector<GridSpec> shift_grids(double epsilon);

// One candidate anchor on an axis: the window [coord, coord + 1] fully
// contains refined indices lo..hi.
struct AxisAnchor {
  double coord = 0.0;
  std::size_t lo = 0;
  std::size_t hi = 0;
};

// Anchors for placing squares inside a cell whose extent on this axis runs
// from lines.front() to lines.back(): every line whose window stays inside,
// plus the lowest anchor whose window reaches lines.back(). Sorted by coord.
std::vector<AxisAnchor> cell_axis_anchors(std::span<const double> lines);

struct KSquares {
  std::vector<Placement> placements;
  double value = 0.0;
};

// Exact best union value of k line-anchored unit squares inside one cell,
// counting only fully covered refined cells. Built once per partition and
// queried for several k; not safe to query concurrently.
//
// Windows dominated on both axes are dropped and identical covered sets are
// merged. Candidates that can share a refined cell form components, which are
// solved separately by depth-first search with marginal-gain bounds and then
// combined by a small knapsack over the components.
class SquareEnumerator {
 public:
  explicit SquareEnumerator(const CellPartition& partition);

  KSquares best(std::size_t k) const;

  std::size_t candidate_count() const { return candidates_.size(); }
  // Weight of every refined cell some candidate can cover.
  double reachable_weight() const { return reachable_; }

 private:
  struct Candidate {
    Placement anchor;
    std::vector<std::uint32_t> cells;  // indices into cell_weight_
    double weight = 0.0;
  };
  struct Choice {
    std::vector<std::size_t> chosen;  // indices into candidates_
    double value = 0.0;
    bool complete = false;  // covers every cell of its component
  };
  struct Component {
    std::vector<std::size_t> candidates;  // ascending, so by weight
    std::size_t cell_count = 0;
    mutable std::vector<Choice> solved;  // solved[j]: best with j squares
  };

  void drop_dominated();
  const Choice& component_best(const Component& comp, std::size_t j) const;
  Choice search_component(const Component& comp, std::size_t j) const;
  double canonical_value(std::span<const std::size_t> chosen) const;

  std::vector<double> cell_weight_;  // non-zero refined cells
  std::vector<Candidate> candidates_;  // sorted by weight, descending
  std::vector<Component> components_;
  double reachable_ = 0.0;
  mutable std::vector<int> count_;  // search scratch, all zero between calls
};

// enumerate_k_squares for a single k.
KSquares enumerate_k_squares(const CellPartition& partition, std::size_t k);

// Weight fraction of the fine partition used for the k-square tables.
inline double fine_fraction(double epsilon) { return epsilon * epsilon * epsilon / 864.0; }

// F(c, k) for one cell of mesh 6/epsilon.
double maxcov_cell_m(std::span<const WeightedPoint> points, double epsilon, std::size_t k,
                     const Box& cell);

// Indices of the m cells with largest f(c, 1) (all cells if fewer).
std::vector<std::size_t> select_cells(std::span<const double> f, std::size_t m);

// Upper convex hull of {(k, F(k))}: indices, first 0 and last F.size()-1,
// with strictly decreasing slopes.
std::vector<std::size_t> upper_hull(std::span<const double> values);

// F values of one cell for k = 0..values.size()-1 and their upper hull.
struct CoverTable {
  CellIndex cell;
  std::vector<double> values;
  std::vector<std::size_t> hull;

  std::size_t capacity() const { return values.empty() ? 0 : values.size() - 1; }
  // Piecewise-linear hull interpolant at k.
  double hull_value(std::size_t k) const;
};

CoverTable make_cover_table(std::vector<double> values, CellIndex cell = {});

struct AllocationState {
  std::vector<std::size_t> budgets;  // squares per table
  std::size_t total = 0;
  double value = 0.0;
};

// Exact max of sum F(c_i, k_i) subject to sum k_i <= m and k_i <= capacity.
AllocationState allocate_dp(std::span<const CoverTable> tables, std::size_t m);

struct GreedyAllocation {
  AllocationState state;
  std::size_t hull_placed = 0;  // squares committed along hull edges (m')
  double hull_value = 0.0;      // value at m'
};

// Commits whole hull edges of largest slope (ties: lower table index) until
// at least `min_placed` squares are placed or every hull is exhausted.
GreedyAllocation walk_hull_edges(std::span<const CoverTable> tables, std::size_t min_placed);

// Hull-edge greedy down to m - b, then the remaining squares go to tables with
// spare capacity in index order. Throws InputError if the capacities cannot
// absorb m - b squares.
GreedyAllocation allocate_greedy(std::span<const CoverTable> tables, std::size_t m,
                                 std::size_t b);

// (1 - epsilon)-approximate placement of m unit squares.
CoverageSolution maxcov_multi(std::span<const WeightedPoint> points, std::size_t m,
                              double epsilon, const SolverOptions& options = {});

}  // namespace maxcov

#endif  // MAXCOV_MULTI_COVER_HPP
