#include "maxcov/generate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace maxcov {

std::optional<Distribution> parse_distribution(std::string_view name) {
  if (name == "uniform") return Distribution::uniform;
  if (name == "clustered") return Distribution::clustered;
  if (name == "heavy-tailed-weights") return Distribution::heavy_tailed_weights;
  return std::nullopt;
}

std::string_view distribution_name(Distribution d) {
  switch (d) {
    case Distribution::uniform:
      return "uniform";
    case Distribution::clustered:
      return "clustered";
    case Distribution::heavy_tailed_weights:
      return "heavy-tailed-weights";
  }
  return "uniform";
}

std::vector<WeightedPoint> generate_points(std::size_t n, Distribution dist, std::uint64_t seed,
                                           double extent) {
  if (!(extent > 0.0) || !std::isfinite(extent)) throw InputError("extent must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, extent);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto light_weight = [&] { return 0.1 + 0.9 * unit(rng); };

  std::vector<WeightedPoint> out;
  out.reserve(n);
  switch (dist) {
    case Distribution::uniform:
      for (std::size_t k = 0; k < n; ++k) {
        const double x = coord(rng);
        const double y = coord(rng);
        out.push_back({x, y, light_weight()});
      }
      break;
    case Distribution::clustered: {
      const std::size_t clusters = std::max<std::size_t>(1, n / 50);
      std::vector<WeightedPoint> centers(clusters);
      for (auto& c : centers) {
        c.x = coord(rng);
        c.y = coord(rng);
      }
      std::uniform_int_distribution<std::size_t> pick(0, clusters - 1);
      std::normal_distribution<double> spread(0.0, std::max(0.5, extent / 50.0));
      for (std::size_t k = 0; k < n; ++k) {
        const auto& c = centers[pick(rng)];
        const double x = std::clamp(c.x + spread(rng), 0.0, extent);
        const double y = std::clamp(c.y + spread(rng), 0.0, extent);
        out.push_back({x, y, light_weight()});
      }
      break;
    }
    case Distribution::heavy_tailed_weights:
      // Pareto weights, shape 1.2.
      for (std::size_t k = 0; k < n; ++k) {
        const double x = coord(rng);
        const double y = coord(rng);
        const double u = 1.0 - unit(rng);
        out.push_back({x, y, std::pow(u, -1.0 / 1.2)});
      }
      break;
  }
  return out;
}

}  // namespace maxcov
