// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every instance is drawn from fixed seeds.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "maxcov/generate.hpp"
#include "maxcov/multi_cover.hpp"
#include "maxcov/oracle.hpp"
#include "maxcov/partition.hpp"
#include "maxcov/single_cover.hpp"
#include "support.hpp"

namespace {

using namespace maxcov;
using testing::Digest;
using testing::Rng;
using Entry = std::pair<double, double>;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<WeightedPoint> random_instance(Rng& rng, std::size_t n, bool clustered) {
  const double extent = testing::uniform(rng, 1.5, 6.0);
  return clustered ? testing::clustered_points(rng, n, extent)
                   : testing::uniform_points(rng, n, extent);
}

// 1. maxcov_single >= (1 - eps) * oracle_single.
Outcome single_ratio(Digest& out, unsigned threads) {
  Rng rng(1001);
  const double eps_set[] = {0.5, 0.25, 0.125};
  Outcome o;
  int instances = 0;
  int failures = 0;
  double worst = INFINITY;
  for (int t = 0; t < 600; ++t) {
    const auto n = static_cast<std::size_t>(testing::uniform_int(rng, 5, 40));
    const auto pts = random_instance(rng, n, t % 2 == 1);
    const double eps = eps_set[t % 3];
    const auto got = maxcov_single(pts, eps, {threads});
    const auto best = oracle_single(pts);
    out.add_solution(got);
    ++instances;
    if (got.weight < (1.0 - eps) * best.weight) ++failures;
    if (best.weight > 0) worst = std::min(worst, got.weight / best.weight);
  }
  o.pass = failures == 0;
  o.detail = fmt("%d instances, %d below bound, worst ratio to optimum %.4f", instances, failures, worst);
  return o;
}

// 2. exact_single equals oracle_single within 1e-9 * W.
Outcome exact_equivalence(Digest& out) {
  Rng rng(1002);
  Outcome o;
  int failures = 0;
  double worst = 0.0;
  const int instances = 600;
  for (int t = 0; t < instances; ++t) {
    const auto n = static_cast<std::size_t>(testing::uniform_int(rng, 1, 40));
    std::vector<WeightedPoint> pts;
    switch (t % 3) {
      case 0: pts = testing::uniform_points(rng, n, testing::uniform(rng, 1.0, 5.0)); break;
      case 1: pts = testing::clustered_points(rng, n, testing::uniform(rng, 1.0, 5.0)); break;
      default: pts = testing::lattice_points(rng, n, 8, 0.25); break;
    }
    const auto got = exact_single(pts);
    const auto best = oracle_single(pts);
    out.add_solution(got);
    const double gap = std::abs(got.weight - best.weight);
    worst = std::max(worst, gap / total_weight(pts));
    if (gap > 1e-9 * total_weight(pts)) ++failures;
  }
  o.pass = failures == 0;
  o.detail = fmt("%d instances, %d mismatches, largest relative gap %.3g", instances, failures, worst);
  return o;
}

// 3. maxcov_multi >= (1 - eps) * oracle_multi.
Outcome multi_ratio(Digest& out, unsigned threads) {
  Rng rng(1003);
  Outcome o;
  int failures = 0;
  double worst = INFINITY;
  const int instances = 240;
  for (int t = 0; t < instances; ++t) {
    const auto n = static_cast<std::size_t>(testing::uniform_int(rng, 1, 20));
    const auto pts = random_instance(rng, n, t % 2 == 1);
    const auto m = static_cast<std::size_t>(1 + t % 3);
    const double eps = (t / 3) % 2 == 0 ? 0.5 : 0.25;
    const auto got = maxcov_multi(pts, m, eps, {threads});
    const auto best = oracle_multi(pts, m);
    out.add_solution(got);
    if (got.weight < (1.0 - eps) * best.weight) ++failures;
    if (best.weight > 0) worst = std::min(worst, got.weight / best.weight);
  }
  o.pass = failures == 0;
  o.detail = fmt("%d instances, %d below bound, worst ratio to optimum %.4f", instances, failures, worst);
  return o;
}

double max_gap_weight(const std::vector<Entry>& coords, const std::vector<double>& lines) {
  double worst = 0.0;
  for (std::size_t l = 0; l + 1 < lines.size(); ++l) {
    double s = 0.0;
    for (const auto& [x, w] : coords) {
      if (lines[l] < x && x < lines[l + 1]) s += w;
    }
    worst = std::max(worst, s);
  }
  return worst;
}

// 4. Strip weight and line count bounds for the splitter and cell builds.
Outcome partition_bounds(Digest& out) {
  Rng rng(1004);
  Outcome o;
  int violations = 0;
  const int builds = 1000;
  for (int t = 0; t < builds; ++t) {
    // Splitter on points lighter than w_d.
    const int n = testing::uniform_int(rng, 1, 300);
    std::vector<Entry> c;
    double w = 0.0;
    for (int k = 0; k < n; ++k) {
      const double x = t % 4 == 0 ? testing::uniform_int(rng, 0, 20) : testing::uniform(rng, 0, 10);
      c.emplace_back(x, testing::uniform(rng, 0.01, 1.0));
      w += c.back().second;
    }
    const double w_d = w / testing::uniform(rng, 1.5, 40.0);
    std::erase_if(c, [&](const Entry& e) { return e.second >= w_d; });
    double light = 0.0;
    for (const auto& e : c) light += e.second;
    const auto p = partition_axis(c, w_d);
    for (const double l : p.lines) out.add(l);
    if (max_gap_weight(c, p.lines) > w_d) ++violations;
    if (static_cast<double>(p.lines.size()) > 2.0 * light / w_d) ++violations;

    // Full cell build with w_d = eps * W_c / 16.
    const double eps = std::vector<double>{0.5, 0.25, 0.125, 0.1}[t % 4];
    const auto npts = static_cast<std::size_t>(testing::uniform_int(rng, 1, 400));
    auto pts = t % 3 == 0 ? testing::lattice_points(rng, npts, 8, 0.25)
                          : testing::uniform_points(rng, npts, 2.0);
    if (t % 5 == 0) pts[0].w = 50.0 * static_cast<double>(npts);
    const auto part = build_cell_partition(pts, eps / 16, {0, 0, 2, 2});
    for (const double l : part.xs()) out.add(l);
    for (const double l : part.ys()) out.add(l);
    std::vector<Entry> xc, yc;
    for (const auto& q : pts) {
      xc.emplace_back(q.x, q.w);
      yc.emplace_back(q.y, q.w);
    }
    const double cap = 32 / eps + 2;
    if (static_cast<double>(part.xs().size()) > cap) ++violations;
    if (static_cast<double>(part.ys().size()) > cap) ++violations;
    if (max_gap_weight(xc, part.xs()) > part.threshold()) ++violations;
    if (max_gap_weight(yc, part.ys()) > part.threshold()) ++violations;
  }
  o.pass = violations == 0;
  o.detail = fmt("%d splitter builds and %d cell builds, %d violations", builds, builds, violations);
  return o;
}

CoverTable random_table(Rng& rng, std::size_t cap) {
  std::vector<double> f{0.0};
  for (std::size_t k = 1; k <= cap; ++k) f.push_back(f.back() + testing::uniform_int(rng, 0, 12));
  return make_cover_table(std::move(f));
}

// 5. Hull walk landing exactly on m' equals the DP; greedy >= (1 - b/m) * DP.
Outcome greedy_dp(Digest& out) {
  Rng rng(1005);
  Outcome o;
  int landed = 0;
  int landed_mismatch = 0;
  int ratio_failures = 0;
  int suites = 0;
  while (landed < 250 || suites < 500) {
    ++suites;
    const auto b = static_cast<std::size_t>(testing::uniform_int(rng, 1, 8));
    const int t = testing::uniform_int(rng, 1, 8);
    std::vector<CoverTable> tables;
    for (int i = 0; i < t; ++i) tables.push_back(random_table(rng, b));
    const std::size_t cap = b * static_cast<std::size_t>(t);
    const auto m = static_cast<std::size_t>(testing::uniform_int(rng, 1, static_cast<int>(cap + b)));

    const auto walk = walk_hull_edges(tables, m);
    out.add(walk.state.value);
    if (walk.hull_placed == m) {
      ++landed;
      if (walk.state.value != allocate_dp(tables, m).value) ++landed_mismatch;
    }
    const double dp = allocate_dp(tables, m).value;
    out.add(dp);
    if (m > b) {
      const auto g = allocate_greedy(tables, m, b);
      out.add(g.state.value);
      if (g.state.value < (1.0 - static_cast<double>(b) / static_cast<double>(m)) * dp) ++ratio_failures;
    }
  }
  o.pass = landed >= 200 && landed_mismatch == 0 && ratio_failures == 0;
  o.detail = fmt("%d suites, %d landed on m' = m with %d mismatches, %d ratio failures", suites,
                 landed, landed_mismatch, ratio_failures);
  return o;
}

double direct_window(const CandidateGrid& g, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t a = i; a <= g.X[i]; ++a) {
    for (std::size_t b = j; b <= g.Y[j]; ++b) s += g.weight(a, b);
  }
  return s;
}

// 6. scan_best_window against direct evaluation of every anchor.
Outcome scan_equivalence(Digest& out) {
  Rng rng(1006);
  Outcome o;
  int failures = 0;
  const int grids = 120;
  for (int t = 0; t < grids; ++t) {
    CandidateGrid g;
    g.cols = static_cast<std::size_t>(testing::uniform_int(rng, 1, 30));
    g.rows = static_cast<std::size_t>(testing::uniform_int(rng, 1, 30));
    g.weights.resize(g.cols * g.rows);
    for (auto& w : g.weights) w = testing::uniform_int(rng, 0, 20);
    auto monotone = [&](std::size_t n) {
      std::vector<std::size_t> m(n);
      std::size_t prev = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto lo = std::max(prev, i);
        prev = static_cast<std::size_t>(testing::uniform_int(
            rng, static_cast<int>(lo), static_cast<int>(std::min(n - 1, lo + 6))));
        m[i] = prev;
      }
      return m;
    };
    g.X = monotone(g.cols);
    g.Y = monotone(g.rows);
    g.anchor_stride = t % 2 == 0 ? 1 : 2;
    double best = -1.0;
    for (std::size_t i = 0; i < g.cols; i += g.anchor_stride) {
      for (std::size_t j = 0; j < g.rows; j += g.anchor_stride) best = std::max(best, direct_window(g, i, j));
    }
    const auto got = scan_best_window(g);
    out.add(got.value);
    out.add_u64(got.i);
    out.add_u64(got.j);
    if (got.value != best || direct_window(g, got.i, got.j) != best) ++failures;
  }
  o.pass = failures == 0;
  o.detail = fmt("%d grids up to 30x30, %d mismatches", grids, failures);
  return o;
}

std::vector<double> window_anchors(const std::vector<double>& lines) {
  std::vector<double> a;
  const double end = lines.back();
  for (const double l : lines) {
    if (l + 1.0 <= end) a.push_back(l);
  }
  const double flush = lowest_anchor(end, 1.0);
  if (std::find(a.begin(), a.end(), flush) == a.end()) a.push_back(flush);
  return a;
}

bool covers_refined(const std::vector<double>& lines, double a, std::size_t c) {
  if (c % 2 == 0) return interval_contains(a, 1.0, lines[c / 2]);
  return a <= lines[c / 2] && interval_contains(a, 1.0, lines[c / 2 + 1]);
}

// Best union of k windows over every k-subset of anchor pairs.
double exhaustive_k(const CellPartition& part, std::size_t k) {
  const auto ax = window_anchors(part.xs());
  const auto ay = window_anchors(part.ys());
  const std::size_t rows = part.refined_rows();
  const std::size_t cells = part.refined_cols() * rows;
  std::vector<std::vector<char>> masks;
  for (const double x : ax) {
    for (const double y : ay) {
      std::vector<char> m(cells, 0);
      for (std::size_t c = 0; c < part.refined_cols(); ++c) {
        for (std::size_t r = 0; r < rows; ++r) {
          m[c * rows + r] = covers_refined(part.xs(), x, c) && covers_refined(part.ys(), y, r);
        }
      }
      masks.push_back(std::move(m));
    }
  }
  k = std::min(k, masks.size());
  double best = 0.0;
  std::function<void(std::size_t, std::size_t, const std::vector<char>&)> walk =
      [&](std::size_t start, std::size_t left, const std::vector<char>& cur) {
        if (left == 0) {
          double v = 0.0;
          for (std::size_t c = 0; c < cells; ++c) {
            if (cur[c]) v += part.weights()[c];
          }
          best = std::max(best, v);
          return;
        }
        for (std::size_t i = start; i + left <= masks.size(); ++i) {
          auto next = cur;
          for (std::size_t c = 0; c < cells; ++c) next[c] |= masks[i][c];
          walk(i + 1, left - 1, next);
        }
      };
  walk(0, k, std::vector<char>(cells, 0));
  return best;
}

// 7. enumerate_k_squares against exhaustive anchor subsets, k <= 3.
Outcome enumeration(Digest& out) {
  Rng rng(1007);
  Outcome o;
  int failures = 0;
  const int instances = 120;
  for (int t = 0; t < instances; ++t) {
    const auto part = testing::random_partition(rng, 8, testing::uniform(rng, 0.6, 3.0));
    const auto k = static_cast<std::size_t>(1 + t % 3);
    const auto got = enumerate_k_squares(part, k);
    out.add(got.value);
    for (const auto& p : got.placements) {
      out.add(p.x);
      out.add(p.y);
    }
    if (got.value != exhaustive_k(part, k) || got.placements.size() > k) ++failures;
  }
  o.pass = failures == 0;
  o.detail = fmt("%d partitions up to 8x8 lines, %d mismatches", instances, failures);
  return o;
}

// 8. Median wall time of maxcov_single, m = 1, eps = 0.2. Points are uniform
// in [0, 20]^2, dense enough that every cell partition has its full line
// count from the smallest size on. Re-runs must agree with the first run.
Outcome scaling(Digest& out, bool& repeat_agree) {
  Outcome o;
  const std::size_t sizes[] = {100000, 200000, 400000, 800000, 1000000};
  constexpr int repeats = 3;
  double prev = 0.0;
  double worst_ratio = 0.0;
  double at_million = 0.0;
  std::string per_size;
  repeat_agree = true;
  for (const std::size_t n : sizes) {
    const auto pts = generate_points(n, Distribution::uniform, 8, 20.0);
    std::vector<double> times;
    Digest first;
    for (int r = 0; r < repeats; ++r) {
      const auto t0 = Clock::now();
      const auto sol = maxcov_single(pts, 0.2);
      times.push_back(seconds_since(t0));
      Digest d;
      d.add_solution(sol);
      if (r == 0) {
        first = d;
        out.add_solution(sol);
      } else if (d.value() != first.value()) {
        repeat_agree = false;
      }
    }
    std::sort(times.begin(), times.end());
    const double median = times[times.size() / 2];
    per_size += fmt(" %zu:%.2fs", n, median);
    if (n == 1000000) {
      at_million = median;
    } else {
      if (prev > 0.0) worst_ratio = std::max(worst_ratio, median / prev);
      prev = median;
    }
  }
  o.pass = worst_ratio <= 2.5 && at_million < 10.0;
  o.detail = fmt("worst doubling ratio %.2f, n=1e6 in %.2fs;", worst_ratio, at_million) + per_size;
  return o;
}

void report(int id, const char* name, const Outcome& o, double secs, int& failed) {
  std::printf("[%s] criterion %d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name,
              o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++failed;
}

}  // namespace

int main() {
  int failed = 0;
  // Digests of every solver output, per criterion, for the determinism check.
  std::vector<std::uint64_t> first_pass;

  auto timed = [&](int id, const char* name, auto&& body) {
    Digest d;
    const auto t0 = Clock::now();
    const Outcome o = body(d);
    report(id, name, o, seconds_since(t0), failed);
    first_pass.push_back(d.value());
  };

  timed(1, "single-rectangle ratio", [](Digest& d) { return single_ratio(d, 1); });
  timed(2, "exact solver equals oracle", [](Digest& d) { return exact_equivalence(d); });
  timed(3, "multi-rectangle ratio", [](Digest& d) { return multi_ratio(d, 1); });
  timed(4, "partition bounds", [](Digest& d) { return partition_bounds(d); });
  timed(5, "greedy and DP agreement", [](Digest& d) { return greedy_dp(d); });
  timed(6, "scan equivalence", [](Digest& d) { return scan_equivalence(d); });
  timed(7, "enumeration contract", [](Digest& d) { return enumeration(d); });
  bool repeat_agree = true;
  timed(8, "near-linear scaling", [&](Digest& d) { return scaling(d, repeat_agree); });

  // 9. Second run of criteria 1-7 with the same seeds; criterion 8 compared
  // its repeats above. Criteria 1 and 3 also run once more on 4 threads.
  {
    const auto t0 = Clock::now();
    std::vector<std::uint64_t> second;
    std::vector<std::uint64_t> threaded;
    Digest d;
    single_ratio(d, 1);
    second.push_back(d.value());
    d = {};
    exact_equivalence(d);
    second.push_back(d.value());
    d = {};
    multi_ratio(d, 1);
    second.push_back(d.value());
    d = {};
    partition_bounds(d);
    second.push_back(d.value());
    d = {};
    greedy_dp(d);
    second.push_back(d.value());
    d = {};
    scan_equivalence(d);
    second.push_back(d.value());
    d = {};
    enumeration(d);
    second.push_back(d.value());
    d = {};
    single_ratio(d, 4);
    threaded.push_back(d.value());
    d = {};
    multi_ratio(d, 4);
    threaded.push_back(d.value());

    int differing = 0;
    for (std::size_t i = 0; i < second.size(); ++i) differing += first_pass[i] != second[i];
    const int thread_diff = (threaded[0] != first_pass[0]) + (threaded[1] != first_pass[2]);
    Outcome o;
    o.pass = differing == 0 && thread_diff == 0 && repeat_agree;
    o.detail = fmt("%d of 7 criteria differ on re-run, %d of 2 differ on 4 threads, scaling repeats %s",
                   differing, thread_diff, repeat_agree ? "identical" : "differ");
    report(9, "determinism", o, seconds_since(t0), failed);
  }

  std::printf("%d of 9 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
