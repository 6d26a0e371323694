#ifndef MAXCOV_IO_HPP
#define MAXCOV_IO_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maxcov/geometry.hpp"

namespace maxcov {

// Malformed point data. line() is 1-based, 0 when no line applies.
class DataError : public std::runtime_error {
 public:
  DataError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// "x,y,w" header then one record per line; blank lines are skipped and an
// empty text is an empty point set.
std::vector<WeightedPoint> parse_points_csv(std::string_view text);
// [{"x": .., "y": .., "w": ..}, ...]
std::vector<WeightedPoint> parse_points_json(std::string_view text);
// JSON when the first non-blank character is '[', CSV otherwise.
std::vector<WeightedPoint> parse_points(std::string_view text);
std::vector<WeightedPoint> read_points(const std::string& path);

void write_points_csv(std::ostream& out, std::span<const WeightedPoint> points);
std::string format_double(double v);

struct SolveReport {
  double requested_epsilon = 0.0;
  double effective_epsilon = 0.0;
  std::size_t m = 1;
  RectShape shape;
  std::size_t point_count = 0;
  std::vector<Placement> placements;  // original coordinates
  double weight = 0.0;
  double verified_weight = 0.0;
  double estimate = 0.0;
  std::optional<GridSpec> grid_shift;
  SolveStats stats;
  std::vector<std::pair<std::string, double>> timings;  // seconds
};

// Versioned JSON document (schema 1). Timings live under their own key so
// runs can be diffed without them.
std::string report_to_json(const SolveReport& report, bool with_timings = true);
SolveReport report_from_json(std::string_view text);

// Points as circles with area proportional to weight, placements as outlines.
void write_svg(std::ostream& out, std::span<const WeightedPoint> points,
               std::span<const Placement> placements, const RectShape& shape);

}  // namespace maxcov

#endif  // MAXCOV_IO_HPP
