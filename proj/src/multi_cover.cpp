#include "maxcov/multi_cover.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_map>

#include "maxcov/selection.hpp"
#include "parallel.hpp"

namespace maxcov {

double snap_epsilon(double epsilon) {
  validate_epsilon(epsilon);
  const double k = std::ceil(1.0 / epsilon - 1e-9);
  return 1.0 / k;
}

std::int64_t shift_count(double epsilon) {
  return 6 * std::llround(1.0 / snap_epsilon(epsilon));
}

std::vector<GridSpec> shift_grids(double epsilon) {
  const std::int64_t count = shift_count(epsilon);
  const auto mesh = static_cast<double>(count);
  std::vector<GridSpec> grids;
  grids.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    grids.push_back({mesh, static_cast<double>(i), static_cast<double>(i)});
  }
  return grids;
}

std::vector<AxisAnchor> cell_axis_anchors(std::span<const double> lines) {
  std::vector<AxisAnchor> out;
  if (lines.empty()) return out;
  const std::size_t n = lines.size();
  const double end = lines.back();
  auto last_within = [&](double reach) {
    return static_cast<std::size_t>(std::upper_bound(lines.begin(), lines.end(), reach) -
                                    lines.begin() - 1);
  };

  for (std::size_t l = 0; l < n; ++l) {
    if (lines[l] + 1.0 > end) break;
    out.push_back({lines[l], 2 * l, 2 * last_within(lines[l] + 1.0)});
  }

  // The lowest anchor whose window reaches the far boundary.
  const double flush = lowest_anchor(end, 1.0);
  const auto first = static_cast<std::size_t>(
      std::lower_bound(lines.begin(), lines.end(), flush) - lines.begin());
  out.push_back({flush, 2 * first, 2 * last_within(flush + 1.0)});
  std::stable_sort(out.begin(), out.end(),
                   [](const AxisAnchor& a, const AxisAnchor& b) { return a.coord < b.coord; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const AxisAnchor& a, const AxisAnchor& b) { return a.coord == b.coord; }),
            out.end());
  return out;
}

namespace {

// Keeps the first anchor of every run with equal `hi`; later ones cover a
// subset of its refined range.
std::vector<AxisAnchor> maximal_anchors(const std::vector<AxisAnchor>& all) {
  std::vector<AxisAnchor> out;
  for (const auto& a : all) {
    if (out.empty() || out.back().hi != a.hi) out.push_back(a);
  }
  return out;
}

// Range of maximal anchors whose refined range contains index c.
std::pair<std::size_t, std::size_t> anchors_covering(const std::vector<AxisAnchor>& anchors,
                                                     std::size_t c) {
  const auto first = std::lower_bound(anchors.begin(), anchors.end(), c,
                                      [](const AxisAnchor& a, std::size_t v) { return a.hi < v; });
  const auto past = std::upper_bound(anchors.begin(), anchors.end(), c,
                                     [](std::size_t v, const AxisAnchor& a) { return v < a.lo; });
  return {static_cast<std::size_t>(first - anchors.begin()),
          static_cast<std::size_t>(past - anchors.begin())};
}

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto x : v) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

SquareEnumerator::SquareEnumerator(const CellPartition& partition) {
  const auto xa = maximal_anchors(cell_axis_anchors(partition.xs()));
  const auto ya = maximal_anchors(cell_axis_anchors(partition.ys()));
  const std::size_t cols = partition.refined_cols();
  const std::size_t rows = partition.refined_rows();

  // Non-zero refined cells, numbered column-major.
  std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> by_col(cols);
  std::vector<std::pair<std::size_t, std::size_t>> cell_pos;
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) {
      const double w = partition.weight(c, r);
      if (w > 0.0) {
        by_col[c].emplace_back(r, static_cast<std::uint32_t>(cell_weight_.size()));
        cell_weight_.push_back(w);
        cell_pos.emplace_back(c, r);
      }
    }
  }
  if (xa.empty() || ya.empty() || cell_weight_.empty()) return;

  // Only anchor pairs that cover some non-zero cell are worth a look.
  std::vector<std::uint64_t> keys;
  for (const auto& [c, r] : cell_pos) {
    const auto [x0, x1] = anchors_covering(xa, c);
    const auto [y0, y1] = anchors_covering(ya, r);
    for (std::size_t ix = x0; ix < x1; ++ix) {
      for (std::size_t iy = y0; iy < y1; ++iy) keys.push_back(ix * ya.size() + iy);
    }
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  std::unordered_map<std::vector<std::uint32_t>, std::size_t, VectorHash> seen;
  seen.reserve(keys.size());
  for (const std::uint64_t key : keys) {
    const AxisAnchor& ax = xa[key / ya.size()];
    const AxisAnchor& ay = ya[key % ya.size()];
    Candidate cand;
    cand.anchor = {ax.coord, ay.coord};
    for (std::size_t c = ax.lo; c <= ax.hi; ++c) {
      const auto& colv = by_col[c];
      auto it = std::lower_bound(colv.begin(), colv.end(), std::make_pair(ay.lo, std::uint32_t{0}));
      for (; it != colv.end() && it->first <= ay.hi; ++it) cand.cells.push_back(it->second);
    }
    if (cand.cells.empty()) continue;
    std::sort(cand.cells.begin(), cand.cells.end());
    for (const auto id : cand.cells) cand.weight += cell_weight_[id];
    if (seen.try_emplace(cand.cells, candidates_.size()).second) {
      candidates_.push_back(std::move(cand));
    }
  }
  drop_dominated();
  std::stable_sort(candidates_.begin(), candidates_.end(),
                   [](const Candidate& a, const Candidate& b) { return a.weight > b.weight; });

  std::vector<char> reach(cell_weight_.size(), 0);
  for (const auto& cand : candidates_) {
    for (const auto id : cand.cells) reach[id] = 1;
  }
  for (std::size_t id = 0; id < reach.size(); ++id) {
    if (reach[id]) reachable_ += cell_weight_[id];
  }

  // Components: candidates linked through shared cells.
  std::vector<std::uint32_t> parent(cell_weight_.size());
  std::iota(parent.begin(), parent.end(), 0U);
  auto find = [&](std::uint32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& cand : candidates_) {
    for (const auto id : cand.cells) parent[find(id)] = find(cand.cells.front());
  }
  std::unordered_map<std::uint32_t, std::size_t> comp_of;
  for (std::size_t c = 0; c < candidates_.size(); ++c) {
    const auto root = find(candidates_[c].cells.front());
    const auto [it, fresh] = comp_of.try_emplace(root, components_.size());
    if (fresh) components_.emplace_back();
    components_[it->second].candidates.push_back(c);
  }
  for (std::size_t id = 0; id < reach.size(); ++id) {
    if (reach[id]) ++components_[comp_of.at(find(static_cast<std::uint32_t>(id)))].cell_count;
  }
  count_.assign(cell_weight_.size(), 0);
}

// A window whose covered set is a strict subset of another's never helps.
void SquareEnumerator::drop_dominated() {
  std::vector<std::vector<std::uint32_t>> holders(cell_weight_.size());
  for (std::size_t c = 0; c < candidates_.size(); ++c) {
    for (const auto id : candidates_[c].cells) holders[id].push_back(static_cast<std::uint32_t>(c));
  }
  std::vector<char> dominated(candidates_.size(), 0);
  for (std::size_t c = 0; c < candidates_.size(); ++c) {
    const auto& cells = candidates_[c].cells;
    std::uint32_t rare = cells.front();
    for (const auto id : cells) {
      if (holders[id].size() < holders[rare].size()) rare = id;
    }
    for (const auto other : holders[rare]) {
      const auto& big = candidates_[other].cells;
      if (other == c || dominated[other] || big.size() <= cells.size()) continue;
      if (std::includes(big.begin(), big.end(), cells.begin(), cells.end())) {
        dominated[c] = 1;
        break;
      }
    }
  }
  std::size_t kept = 0;
  for (std::size_t c = 0; c < candidates_.size(); ++c) {
    if (dominated[c]) continue;
    if (kept != c) candidates_[kept] = std::move(candidates_[c]);
    ++kept;
  }
  candidates_.resize(kept);
}

double SquareEnumerator::canonical_value(std::span<const std::size_t> chosen) const {
  std::vector<char> hit(cell_weight_.size(), 0);
  for (const std::size_t c : chosen) {
    for (const auto id : candidates_[c].cells) hit[id] = 1;
  }
  double sum = 0.0;
  for (std::size_t id = 0; id < hit.size(); ++id) {
    if (hit[id]) sum += cell_weight_[id];
  }
  return sum;
}

SquareEnumerator::Choice SquareEnumerator::search_component(const Component& comp,
                                                            std::size_t j) const {
  const std::vector<std::size_t>& list = comp.candidates;
  const std::size_t n = list.size();
  std::size_t covered = 0;
  double value = 0.0;

  auto gain_of = [&](std::size_t c) {
    double g = 0.0;
    for (const auto id : candidates_[c].cells) {
      if (count_[id] == 0) g += cell_weight_[id];
    }
    return g;
  };
  auto add = [&](std::size_t c) {
    double g = 0.0;
    for (const auto id : candidates_[c].cells) {
      if (count_[id]++ == 0) {
        g += cell_weight_[id];
        ++covered;
      }
    }
    value += g;
    return g;
  };
  auto remove = [&](std::size_t c, double g) {
    for (const auto id : candidates_[c].cells) {
      if (--count_[id] == 0) --covered;
    }
    value -= g;
  };

  // Incumbent: one square fewer, or greedy, whichever is better.
  Choice best = comp.solved[j - 1];
  {
    std::vector<std::pair<std::size_t, double>> taken;
    for (std::size_t round = 0; round < j && covered < comp.cell_count; ++round) {
      double top = 0.0;
      std::size_t arg = n;
      for (std::size_t i = 0; i < n; ++i) {
        const double g = gain_of(list[i]);
        if (g > top) {
          top = g;
          arg = i;
        }
      }
      if (arg == n) break;
      taken.emplace_back(arg, add(list[arg]));
    }
    if (value > best.value) {
      best.chosen.clear();
      for (const auto& t : taken) best.chosen.push_back(list[t.first]);
      best.value = value;
      best.complete = covered == comp.cell_count;
    }
    for (auto it = taken.rbegin(); it != taken.rend(); ++it) remove(list[it->first], it->second);
  }
  if (best.complete) return best;

  std::vector<std::size_t> stack;
  std::vector<double> gains;
  std::vector<double> bound;
  bool done = false;
  std::function<void(std::size_t)> search = [&](std::size_t start) {
    const std::size_t room = j - stack.size();
    if (room == 1) {
      double top = 0.0;
      std::size_t arg = n;
      for (std::size_t i = start; i < n; ++i) {
        const double g = gain_of(list[i]);
        if (g > top) {
          top = g;
          arg = i;
        }
      }
      if (arg < n && value + top > best.value) {
        const double g = add(list[arg]);
        stack.push_back(list[arg]);
        best.chosen = stack;
        best.value = value;
        best.complete = covered == comp.cell_count;
        done = best.complete;
        stack.pop_back();
        remove(list[arg], g);
      }
      return;
    }
    // Marginal gains are submodular: for any set G, an extension O satisfies
    // f(O) <= f(G) + sum of the |O| largest gains relative to G. Greedy sets
    // G of growing size give the node bound (and feasible solutions).
    std::vector<double> g(n - start);
    for (std::size_t i = start; i < n; ++i) g[i - start] = gain_of(list[i]);
    {
      const double base = value;
      std::vector<std::pair<std::size_t, double>> greedy;
      std::vector<double> h = g;
      double node_bound = std::numeric_limits<double>::infinity();
      for (std::size_t step = 0;; ++step) {
        std::vector<double> sorted;
        for (const double v : h) {
          if (v > 0.0) sorted.push_back(v);
        }
        const std::size_t take = std::min(room, sorted.size());
        std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(take),
                          sorted.end(), std::greater<>());
        double sum = value - base;
        for (std::size_t q = 0; q < take; ++q) sum += sorted[q];
        node_bound = std::min(node_bound, sum);
        if (step == room || take == 0 || base + node_bound <= best.value) break;
        const auto arg = static_cast<std::size_t>(
            std::max_element(h.begin(), h.end()) - h.begin());
        greedy.emplace_back(arg, add(list[start + arg]));
        if (value > best.value) {
          best.chosen = stack;
          for (const auto& q : greedy) best.chosen.push_back(list[start + q.first]);
          best.value = value;
          best.complete = covered == comp.cell_count;
        }
        for (std::size_t i = start; i < n; ++i) h[i - start] = gain_of(list[i]);
      }
      for (auto it = greedy.rbegin(); it != greedy.rend(); ++it) {
        remove(list[start + it->first], it->second);
      }
      if (best.complete) done = true;
      if (done || base + node_bound <= best.value) return;
    }
    std::vector<double> suffix_bound(n - start + 1, 0.0);
    std::vector<double> top;  // the `room` largest gains seen, descending
    double top_sum = 0.0;
    for (std::size_t i = n; i-- > start;) {
      const double v = g[i - start];
      if (v > 0.0 && (top.size() < room || v > top.back())) {
        if (top.size() == room) {
          top_sum -= top.back();
          top.pop_back();
        }
        top.insert(std::upper_bound(top.begin(), top.end(), v, std::greater<>()), v);
        top_sum += v;
      }
      suffix_bound[i - start] = top_sum;
    }
    for (std::size_t i = start; i < n && !done; ++i) {
      if (value + suffix_bound[i - start] <= best.value) break;
      if (g[i - start] <= 0.0) continue;
      const double gi = add(list[i]);
      stack.push_back(list[i]);
      if (value > best.value) {
        best.chosen = stack;
        best.value = value;
        best.complete = covered == comp.cell_count;
        done = best.complete;
      }
      if (!done) search(i + 1);
      stack.pop_back();
      remove(list[i], gi);
    }
  };
  search(0);
  return best;
}

const SquareEnumerator::Choice& SquareEnumerator::component_best(const Component& comp,
                                                                 std::size_t j) const {
  j = std::min(j, comp.candidates.size());
  if (comp.solved.empty()) comp.solved.emplace_back();
  while (comp.solved.size() <= j) {
    const std::size_t next = comp.solved.size();
    const Choice& prev = comp.solved.back();
    if (prev.complete || prev.chosen.size() < next - 1) {
      comp.solved.push_back(prev);
    } else {
      comp.solved.push_back(search_component(comp, next));
    }
  }
  return comp.solved[j];
}

KSquares SquareEnumerator::best(std::size_t k) const {
  KSquares out;
  if (k == 0 || candidates_.empty()) return out;

  // Knapsack over components: a[b] = best total with at most b squares.
  const std::size_t t = components_.size();
  std::vector<double> a(k + 1, 0.0);
  std::vector<double> next(k + 1);
  std::vector<std::uint32_t> pick(t * (k + 1), 0);
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t jmax = std::min(k, components_[i].candidates.size());
    for (std::size_t b = 0; b <= k; ++b) {
      double top = a[b];
      std::uint32_t arg = 0;
      for (std::size_t j = 1; j <= std::min(b, jmax); ++j) {
        const double v = a[b - j] + component_best(components_[i], j).value;
        if (v > top) {
          top = v;
          arg = static_cast<std::uint32_t>(j);
        }
      }
      next[b] = top;
      pick[i * (k + 1) + b] = arg;
    }
    std::swap(a, next);
  }

  std::vector<std::size_t> chosen;
  std::size_t b = k;
  for (std::size_t i = t; i-- > 0;) {
    const std::size_t j = pick[i * (k + 1) + b];
    if (j > 0) {
      const auto& c = component_best(components_[i], j).chosen;
      chosen.insert(chosen.end(), c.begin(), c.end());
    }
    b -= j;
  }
  std::sort(chosen.begin(), chosen.end());
  out.value = canonical_value(chosen);
  for (const std::size_t c : chosen) out.placements.push_back(candidates_[c].anchor);
  return out;
}

KSquares enumerate_k_squares(const CellPartition& partition, std::size_t k) {
  return SquareEnumerator(partition).best(k);
}

double maxcov_cell_m(std::span<const WeightedPoint> points, double epsilon, std::size_t k,
                     const Box& cell) {
  if (points.empty() || k == 0) return 0.0;
  const CellPartition partition = build_cell_partition(points, fine_fraction(epsilon), cell);
  return SquareEnumerator(partition).best(k).value;
}

std::vector<std::size_t> select_cells(std::span<const double> f, std::size_t m) {
  return top_k_indices(f, std::min(m, f.size()));
}

std::vector<std::size_t> upper_hull(std::span<const double> values) {
  std::vector<std::size_t> hull;
  for (std::size_t k = 0; k < values.size(); ++k) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      // Drop b unless slope(a, b) > slope(b, k).
      const double lhs = (values[b] - values[a]) * static_cast<double>(k - b);
      const double rhs = (values[k] - values[b]) * static_cast<double>(b - a);
      if (lhs <= rhs) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }
  return hull;
}

double CoverTable::hull_value(std::size_t k) const {
  const auto it = std::lower_bound(hull.begin(), hull.end(), k);
  if (it == hull.end()) return values.back();
  if (*it == k) return values[k];
  const std::size_t hi = *it;
  const std::size_t lo = *std::prev(it);
  const double slope = (values[hi] - values[lo]) / static_cast<double>(hi - lo);
  return values[lo] + slope * static_cast<double>(k - lo);
}

CoverTable make_cover_table(std::vector<double> values, CellIndex cell) {
  if (values.empty()) throw InputError("cover table needs at least F(c, 0)");
  CoverTable t;
  t.cell = cell;
  t.values = std::move(values);
  t.hull = upper_hull(t.values);
  return t;
}

AllocationState allocate_dp(std::span<const CoverTable> tables, std::size_t m) {
  AllocationState state;
  const std::size_t t = tables.size();
  state.budgets.assign(t, 0);
  if (t == 0) return state;
  std::size_t capacity = 0;
  for (const auto& tab : tables) capacity += tab.capacity();
  const std::size_t budget = std::min(m, capacity);

  // a[k]: best value with at most k squares in the tables seen so far.
  std::vector<double> a(budget + 1, 0.0);
  std::vector<double> next(budget + 1);
  std::vector<std::uint32_t> choice(t * (budget + 1), 0);
  for (std::size_t i = 0; i < t; ++i) {
    const auto& f = tables[i].values;
    for (std::size_t k = 0; k <= budget; ++k) {
      const std::size_t jmax = std::min(k, tables[i].capacity());
      double best = -std::numeric_limits<double>::infinity();
      std::uint32_t arg = 0;
      for (std::size_t j = 0; j <= jmax; ++j) {
        const double v = a[k - j] + f[j];
        if (v > best) {
          best = v;
          arg = static_cast<std::uint32_t>(j);
        }
      }
      next[k] = best;
      choice[i * (budget + 1) + k] = arg;
    }
    std::swap(a, next);
  }

  std::size_t k = budget;
  for (std::size_t i = t; i-- > 0;) {
    const std::size_t j = choice[i * (budget + 1) + k];
    state.budgets[i] = j;
    k -= j;
  }
  for (std::size_t i = 0; i < t; ++i) state.total += state.budgets[i];
  state.value = a[budget];
  return state;
}

namespace {

double allocation_value(std::span<const CoverTable> tables, const std::vector<std::size_t>& k) {
  double v = 0.0;
  for (std::size_t i = 0; i < tables.size(); ++i) v += tables[i].values[k[i]];
  return v;
}

}  // namespace

GreedyAllocation walk_hull_edges(std::span<const CoverTable> tables, std::size_t min_placed) {
  GreedyAllocation out;
  const std::size_t t = tables.size();
  out.state.budgets.assign(t, 0);
  std::vector<std::size_t> pos(t, 0);

  struct Edge {
    double slope;
    std::size_t table;
  };
  auto worse = [](const Edge& a, const Edge& b) {
    if (a.slope != b.slope) return a.slope < b.slope;
    return a.table > b.table;
  };
  std::priority_queue<Edge, std::vector<Edge>, decltype(worse)> heap(worse);
  auto push_next = [&](std::size_t i) {
    const auto& tab = tables[i];
    if (pos[i] + 1 >= tab.hull.size()) return;
    const std::size_t lo = tab.hull[pos[i]];
    const std::size_t hi = tab.hull[pos[i] + 1];
    heap.push({(tab.values[hi] - tab.values[lo]) / static_cast<double>(hi - lo), i});
  };
  for (std::size_t i = 0; i < t; ++i) push_next(i);

  std::size_t placed = 0;
  while (placed < min_placed && !heap.empty()) {
    const Edge e = heap.top();
    heap.pop();
    const auto& tab = tables[e.table];
    placed += tab.hull[pos[e.table] + 1] - tab.hull[pos[e.table]];
    ++pos[e.table];
    push_next(e.table);
  }
  for (std::size_t i = 0; i < t; ++i) {
    out.state.budgets[i] = tables[i].hull.empty() ? 0 : tables[i].hull[pos[i]];
  }
  out.state.total = placed;
  out.state.value = allocation_value(tables, out.state.budgets);
  out.hull_placed = placed;
  out.hull_value = out.state.value;
  return out;
}

GreedyAllocation allocate_greedy(std::span<const CoverTable> tables, std::size_t m,
                                 std::size_t b) {
  const std::size_t target = m > b ? m - b : 0;
  std::size_t capacity = 0;
  for (const auto& tab : tables) capacity += tab.capacity();
  if (capacity < target) {
    throw InputError("table capacities (" + std::to_string(capacity) + ") cannot absorb " +
                     std::to_string(target) + " squares");
  }
  GreedyAllocation out = walk_hull_edges(tables, target);
  std::size_t left = m - out.hull_placed;
  for (std::size_t i = 0; i < tables.size() && left > 0; ++i) {
    const std::size_t extra = std::min(left, tables[i].capacity() - out.state.budgets[i]);
    out.state.budgets[i] += extra;
    left -= extra;
  }
  out.state.total = m - left;
  out.state.value = allocation_value(tables, out.state.budgets);
  return out;
}

namespace {

struct GridOutcome {
  double value = -1.0;
  std::vector<Placement> placements;
  SolveStats stats;
};

GridOutcome solve_grid(std::span<const WeightedPoint> points, std::size_t m, double epsilon,
                       const GridSpec& grid) {
  GridOutcome out;
  const auto buckets = bucket_cells(points, grid);
  out.stats.grids = 1;
  out.stats.cells = buckets.size();

  const double inner_eps = epsilon * epsilon / 9.0;
  std::vector<double> f(buckets.size());
  for (std::size_t c = 0; c < buckets.size(); ++c) {
    f[c] = maxcov_single(buckets[c].points, inner_eps).weight;
  }
  const std::vector<std::size_t> chosen = select_cells(f, m);
  out.stats.selected_cells = chosen.size();

  const auto k_inv = static_cast<double>(std::llround(1.0 / epsilon));
  const auto b = static_cast<std::size_t>(36.0 * k_inv * k_inv);
  const std::size_t cap = std::min(m, b);

  std::vector<SquareEnumerator> enumerators;
  std::vector<CoverTable> tables;
  enumerators.reserve(chosen.size());
  tables.reserve(chosen.size());
  for (const std::size_t c : chosen) {
    const CellPartition partition = build_cell_partition(
        buckets[c].points, fine_fraction(epsilon), cell_box(buckets[c].index, grid));
    enumerators.emplace_back(partition);
    const SquareEnumerator& en = enumerators.back();
    std::vector<double> values(cap + 1, 0.0);
    bool saturated = false;
    for (std::size_t k = 1; k <= cap; ++k) {
      if (saturated) {
        values[k] = values[k - 1];
        continue;
      }
      const KSquares best = en.best(k);
      values[k] = std::max(values[k - 1], best.value);
      saturated = best.placements.size() < k || en.candidate_count() <= k;
    }
    tables.push_back(make_cover_table(std::move(values), buckets[c].index));
  }

  const double dp_limit = 324.0 * std::pow(k_inv, 4);
  AllocationState alloc;
  if (static_cast<double>(m) <= dp_limit) {
    alloc = allocate_dp(tables, m);
  } else {
    alloc = allocate_greedy(tables, m, b).state;
    out.stats.used_greedy = true;
  }
  out.value = alloc.value;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (alloc.budgets[i] == 0) continue;
    const KSquares best = enumerators[i].best(alloc.budgets[i]);
    out.placements.insert(out.placements.end(), best.placements.begin(), best.placements.end());
  }
  return out;
}

}  // namespace

CoverageSolution maxcov_multi(std::span<const WeightedPoint> points, std::size_t m,
                              double epsilon, const SolverOptions& options) {
  if (m < 1) throw InputError("m must be at least 1");
  const double eps = snap_epsilon(epsilon);
  validate_points(points);
  CoverageSolution sol;
  if (points.empty()) return sol;

  const auto grids = shift_grids(eps);
  std::vector<GridOutcome> outcomes(grids.size());
  detail::parallel_for(grids.size(), options.threads, [&](std::size_t g) {
    outcomes[g] = solve_grid(points, m, eps, grids[g]);
  });

  std::size_t winner = 0;
  for (std::size_t g = 0; g < outcomes.size(); ++g) {
    if (outcomes[g].value > outcomes[winner].value) winner = g;
    sol.stats.grids += outcomes[g].stats.grids;
    sol.stats.cells += outcomes[g].stats.cells;
    sol.stats.selected_cells += outcomes[g].stats.selected_cells;
    sol.stats.used_greedy = sol.stats.used_greedy || outcomes[g].stats.used_greedy;
  }
  sol.placements = outcomes[winner].placements;
  sol.estimate = outcomes[winner].value;
  sol.grid_shift = grids[winner];
  sol.weight = cover_weight(points, sol.placements);
  return sol;
}

}  // namespace maxcov
