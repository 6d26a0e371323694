#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxcov/generate.hpp"
#include "maxcov/geometry.hpp"
#include "maxcov/io.hpp"
#include "maxcov/multi_cover.hpp"
#include "maxcov/oracle.hpp"
#include "maxcov/single_cover.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kData = 2;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

struct SolveArgs {
  std::string input;
  std::size_t m = 1;
  double epsilon = 0.2;
  double width = 1.0;
  double height = 1.0;
  std::string output;
  std::string plot;
  unsigned threads = 1;
};

int run_solve(const SolveArgs& a) {
  if (!(a.epsilon > 0.0 && a.epsilon < 1.0)) throw UsageError("--epsilon must lie in (0, 1)");
  if (a.m < 1) throw UsageError("--m must be at least 1");
  const maxcov::RectShape shape{a.width, a.height};
  try {
    maxcov::validate_shape(shape);
  } catch (const maxcov::InputError& e) {
    throw UsageError(e.what());
  }

  maxcov::SolveReport report;
  auto t0 = Clock::now();
  const auto points = maxcov::read_points(a.input);
  report.timings.emplace_back("parse", seconds_since(t0));

  t0 = Clock::now();
  const auto norm = maxcov::normalize(points, shape);
  const double eps = maxcov::snap_epsilon(a.epsilon);
  const maxcov::SolverOptions options{a.threads};
  const maxcov::CoverageSolution sol = a.m == 1
                                           ? maxcov::maxcov_single(norm.points, eps, options)
                                           : maxcov::maxcov_multi(norm.points, a.m, eps, options);
  report.timings.emplace_back("solve", seconds_since(t0));

  t0 = Clock::now();
  report.requested_epsilon = a.epsilon;
  report.effective_epsilon = eps;
  report.m = a.m;
  report.shape = shape;
  report.point_count = points.size();
  report.placements = maxcov::denormalize(sol.placements, norm.scale);
  report.weight = maxcov::cover_weight(points, report.placements, shape);
  double direct = 0.0;
  for (const auto& p : points) {
    const bool hit = std::any_of(report.placements.begin(), report.placements.end(),
                                 [&](const maxcov::Placement& q) {
                                   return maxcov::box_contains(q, shape, p);
                                 });
    if (hit) direct += p.w;
  }
  report.verified_weight = direct;
  report.estimate = sol.estimate;
  if (sol.grid_shift) {
    report.grid_shift = maxcov::GridSpec{sol.grid_shift->delta * shape.a,
                                         sol.grid_shift->ax * shape.a,
                                         sol.grid_shift->ay * shape.b};
  }
  report.stats = sol.stats;
  report.timings.emplace_back("verify", seconds_since(t0));

  emit(a.output, maxcov::report_to_json(report));
  if (!a.plot.empty()) {
    std::ostringstream svg;
    maxcov::write_svg(svg, points, report.placements, shape);
    emit(a.plot, svg.str());
  }
  return kOk;
}

struct GenerateArgs {
  std::int64_t n = 1000;
  std::string dist = "uniform";
  std::uint64_t seed = 1;
  double extent = 100.0;
  std::string output;
};

int run_generate(const GenerateArgs& a) {
  if (a.n < 0) throw UsageError("--n must be non-negative");
  const auto dist = maxcov::parse_distribution(a.dist);
  if (!dist) throw UsageError("unknown --dist '" + a.dist + "'");
  if (!(a.extent > 0.0)) throw UsageError("--extent must be positive");
  const auto points =
      maxcov::generate_points(static_cast<std::size_t>(a.n), *dist, a.seed, a.extent);
  std::ostringstream out;
  maxcov::write_points_csv(out, points);
  emit(a.output, out.str());
  return kOk;
}

struct BenchArgs {
  std::vector<std::int64_t> sizes{100000, 200000, 400000, 800000};
  double epsilon = 0.2;
  std::size_t m = 1;
  int repeats = 3;
  double extent = 100.0;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

int run_bench(const BenchArgs& a) {
  if (!(a.epsilon > 0.0 && a.epsilon < 1.0)) throw UsageError("--epsilon must lie in (0, 1)");
  if (a.repeats < 1) throw UsageError("--repeats must be at least 1");
  if (a.m < 1) throw UsageError("--m must be at least 1");
  const double eps = maxcov::snap_epsilon(a.epsilon);
  std::cout << "n,min_s,median_s,max_s,ratio_to_previous\n";
  double prev = 0.0;
  for (const std::int64_t n : a.sizes) {
    if (n < 0) throw UsageError("sizes must be non-negative");
    const auto points = maxcov::generate_points(static_cast<std::size_t>(n),
                                                maxcov::Distribution::uniform, a.seed, a.extent);
    std::vector<double> times;
    for (int r = 0; r < a.repeats; ++r) {
      const auto t0 = Clock::now();
      const auto sol = a.m == 1 ? maxcov::maxcov_single(points, eps, {a.threads})
                                : maxcov::maxcov_multi(points, a.m, eps, {a.threads});
      times.push_back(seconds_since(t0));
      if (sol.placements.size() > a.m) return kData;
    }
    std::sort(times.begin(), times.end());
    const double median = times[times.size() / 2];
    std::cout << n << ',' << times.front() << ',' << median << ',' << times.back() << ',';
    if (prev > 0.0) {
      std::cout << median / prev;
    } else {
      std::cout << '-';
    }
    std::cout << '\n';
    prev = median;
  }
  return kOk;
}

struct OracleArgs {
  std::string input;
  std::size_t m = 1;
  std::size_t max_points = 25;
  std::size_t max_squares = 3;
  std::string output;
};

int run_oracle(const OracleArgs& a) {
  if (a.m < 1) throw UsageError("--m must be at least 1");
  const auto points = maxcov::read_points(a.input);
  maxcov::CoverageSolution sol;
  try {
    sol = maxcov::oracle_multi(points, a.m, {a.max_points, a.max_squares});
  } catch (const maxcov::InputError& e) {
    throw UsageError(e.what());
  }
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["m"] = a.m;
  doc["points"] = points.size();
  auto& places = doc["placements"] = nlohmann::ordered_json::array();
  for (const auto& p : sol.placements) places.push_back({{"x", p.x}, {"y", p.y}});
  doc["weight"] = sol.weight;
  emit(a.output, doc.dump(2) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted maximum coverage with axis-parallel rectangles"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Place m rectangles over a point file");
  s->add_option("input", solve.input, "Point file (CSV x,y,w or JSON array)")->required();
  s->add_option("--m", solve.m, "Number of rectangles");
  s->add_option("--epsilon", solve.epsilon, "Approximation parameter in (0, 1)");
  s->add_option("--width", solve.width, "Rectangle width");
  s->add_option("--height", solve.height, "Rectangle height");
  s->add_option("--output,-o", solve.output, "Result JSON path (stdout if omitted)");
  s->add_option("--plot", solve.plot, "Write an SVG plot here");
  s->add_option("--threads", solve.threads, "Worker threads");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a random point file");
  g->add_option("--n", gen.n, "Number of points");
  g->add_option("--dist", gen.dist, "uniform | clustered | heavy-tailed-weights");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--extent", gen.extent, "Points lie in [0, extent]^2");
  g->add_option("--output,-o", gen.output, "Output path (stdout if omitted)");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Time the solver over growing uniform inputs");
  b->add_option("--sizes", bench.sizes, "Point counts")->delimiter(',');
  b->add_option("--epsilon", bench.epsilon, "Approximation parameter in (0, 1)");
  b->add_option("--m", bench.m, "Number of rectangles");
  b->add_option("--repeats", bench.repeats, "Runs per size");
  b->add_option("--extent", bench.extent, "Points lie in [0, extent]^2");
  b->add_option("--seed", bench.seed, "Random seed");
  b->add_option("--threads", bench.threads, "Worker threads");

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "Brute-force optimum for small inputs");
  o->add_option("input", oracle.input, "Point file")->required();
  o->add_option("--m", oracle.m, "Number of unit squares");
  o->add_option("--max-points", oracle.max_points, "Refuse inputs larger than this");
  o->add_option("--max-squares", oracle.max_squares, "Refuse m larger than this");
  o->add_option("--output,-o", oracle.output, "Result JSON path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (s->parsed()) return run_solve(solve);
    if (g->parsed()) return run_generate(gen);
    if (b->parsed()) return run_bench(bench);
    if (o->parsed()) return run_oracle(oracle);
  } catch (const UsageError& e) {
    std::cerr << "maxcov: " << e.what() << '\n';
    return kUsage;
  } catch (const maxcov::DataError& e) {
    std::cerr << "maxcov: " << e.what() << '\n';
    return kData;
  } catch (const maxcov::InputError& e) {
    std::cerr << "maxcov: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
