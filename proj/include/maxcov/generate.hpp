#ifndef MAXCOV_GENERATE_HPP
#define MAXCOV_GENERATE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "maxcov/geometry.hpp"

namespace maxcov {

enum class Distribution { uniform, clustered, heavy_tailed_weights };

std::optional<Distribution> parse_distribution(std::string_view name);
std::string_view distribution_name(Distribution d);

// Points in [0, extent]^2 with positive weights, reproducible from `seed`.
std::vector<WeightedPoint> generate_points(std::size_t n, Distribution dist, std::uint64_t seed,
                                           double extent);

}  // namespace maxcov

#endif  // MAXCOV_GENERATE_HPP
