#ifndef MAXCOV_ORACLE_HPP
#define MAXCOV_ORACLE_HPP

#include <cstddef>
#include <span>

#include "maxcov/geometry.hpp"

namespace maxcov {

struct OracleCaps {
  std::size_t max_points = 25;
  std::size_t max_squares = 3;
};

// Exact best unit square by trying every canonical anchor: the box's upper
// corner sits on (p.x, q.y) for points p, q. O(n^3). Throws InputError when
// n exceeds max_points.
CoverageSolution oracle_single(std::span<const WeightedPoint> points,
                               std::size_t max_points = 60);

// Exact best m unit squares over all m-subsets of canonical anchors, counting
// the union once. Throws InputError when n or m exceed the caps.
CoverageSolution oracle_multi(std::span<const WeightedPoint> points, std::size_t m,
                              const OracleCaps& caps = {});

}  // namespace maxcov

#endif  // MAXCOV_ORACLE_HPP
