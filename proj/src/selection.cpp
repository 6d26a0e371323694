#include "maxcov/selection.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "maxcov/geometry.hpp"

namespace maxcov {

namespace {

using Entry = std::pair<double, double>;

bool value_less(const Entry& a, const Entry& b) { return a.first < b.first; }

// Position of the smallest value whose inclusive prefix weight reaches
// `target`, leaving [first, pos) smaller and (pos, last) larger. Pivots are
// medians of three until a round keeps more than 3/4 of the range; then
// median of medians takes over, which keeps the worst case linear.
template <class It>
It weighted_select(It first, It last, double target) {
  bool fallback = false;
  while (std::distance(first, last) > 8) {
    const auto n = std::distance(first, last);
    Entry pivot;
    if (fallback) {
      pivot = *detail::median_of_medians(first, last, value_less);
    } else {
      Entry a = *first;
      Entry b = *(first + n / 2);
      Entry c = *std::prev(last);
      if (value_less(b, a)) std::swap(a, b);
      if (value_less(c, b)) std::swap(b, c);
      if (value_less(b, a)) std::swap(a, b);
      pivot = b;
    }
    auto [lt, gt] = detail::partition3(first, last, pivot, value_less);
    double below = 0.0;
    for (auto it = first; it != lt; ++it) below += it->second;
    double at = 0.0;
    for (auto it = lt; it != gt; ++it) at += it->second;
    if (below >= target && lt != first) {
      last = lt;
    } else if (below + at >= target || gt == last) {
      return lt;
    } else {
      target -= below + at;
      first = gt;
    }
    fallback = 4 * std::distance(first, last) > 3 * n;
  }
  detail::insertion_sort(first, last, value_less);
  double run = 0.0;
  for (auto it = first; it != last; ++it) {
    run += it->second;
    if (run >= target) return it;
  }
  // Only reachable through round-off in `target`; the last value then is the
  // one whose prefix covers everything.
  return std::prev(last);
}

}  // namespace

double weighted_median(std::span<const std::pair<double, double>> values) {
  if (values.empty()) throw InputError("weighted median of an empty set");
  std::unordered_map<double, std::size_t> slot;
  slot.reserve(values.size());
  std::vector<Entry> merged;
  merged.reserve(values.size());
  double total = 0.0;
  for (const auto& [x, w] : values) {
    if (!std::isfinite(x)) throw InputError("weighted median: non-finite value");
    if (!std::isfinite(w) || w < 0.0) throw InputError("weighted median: invalid weight");
    const auto [it, inserted] = slot.try_emplace(x, merged.size());
    if (inserted) {
      merged.emplace_back(x, w);
    } else {
      merged[it->second].second += w;
    }
    total += w;
  }
  if (!(total > 0.0)) throw InputError("weighted median: total weight must be positive");
  return weighted_select(merged.begin(), merged.end(), total / 2.0)->first;
}

std::size_t weighted_median_partition(std::span<std::pair<double, double>> values) {
  if (values.empty()) throw InputError("weighted median of an empty set");
  double total = 0.0;
  for (const auto& e : values) total += e.second;
  return static_cast<std::size_t>(
      weighted_select(values.begin(), values.end(), total / 2.0) - values.begin());
}

std::vector<std::size_t> top_k_indices(std::span<const double> keys, std::size_t k) {
  if (k > keys.size()) {
    throw InputError("cannot select " + std::to_string(k) + " of " +
                     std::to_string(keys.size()) + " entries");
  }
  std::vector<std::size_t> chosen;
  if (k == 0) return chosen;
  if (k == keys.size()) {
    chosen.resize(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) chosen[i] = i;
    return chosen;
  }
  std::vector<std::size_t> idx(keys.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  // Strict total order: larger key first, then earlier position.
  auto before = [&keys](std::size_t a, std::size_t b) {
    if (keys[a] != keys[b]) return keys[a] > keys[b];
    return a < b;
  };
  select_nth(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k - 1), idx.end(), before);
  std::vector<bool> mark(keys.size(), false);
  for (std::size_t i = 0; i < k; ++i) mark[idx[i]] = true;
  chosen.reserve(k);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (mark[i]) chosen.push_back(i);
  }
  return chosen;
}

std::vector<std::pair<double, double>> select_top_k(
    std::span<const std::pair<double, double>> values, std::size_t k) {
  std::vector<double> keys(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) keys[i] = values[i].first;
  std::vector<std::pair<double, double>> out;
  for (const std::size_t i : top_k_indices(keys, k)) out.push_back(values[i]);
  return out;
}

}  // namespace maxcov
