#ifndef MAXCOV_SELECTION_HPP
#define MAXCOV_SELECTION_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <iterator>
#include <span>
#include <utility>
#include <vector>

namespace maxcov {

namespace detail {

template <class It, class Less>
void insertion_sort(It first, It last, Less less) {
  for (It i = first; i != last; ++i) {
    for (It j = i; j != first && less(*j, *std::prev(j)); --j) std::iter_swap(j, std::prev(j));
  }
}

template <class It, class Less>
void bfprt_select(It first, It last, It nth, Less less);

// Moves the median of medians of groups of five to the front of the range
// and returns an iterator to it.
template <class It, class Less>
It median_of_medians(It first, It last, Less less) {
  const auto n = std::distance(first, last);
  It out = first;
  for (It g = first; g < last; g += std::min<decltype(n)>(5, std::distance(g, last))) {
    It g_end = g + std::min<decltype(n)>(5, std::distance(g, last));
    insertion_sort(g, g_end, less);
    std::iter_swap(out, g + std::distance(g, g_end) / 2);
    ++out;
  }
  It mid = first + std::distance(first, out) / 2;
  bfprt_select(first, out, mid, less);
  return mid;
}

// Three-way partition around the value `pivot`; returns [lt_end, gt_begin).
template <class It, class T, class Less>
std::pair<It, It> partition3(It first, It last, const T& pivot, Less less) {
  It lt = first;
  It i = first;
  It gt = last;
  while (i < gt) {
    if (less(*i, pivot)) {
      std::iter_swap(lt++, i++);
    } else if (less(pivot, *i)) {
      std::iter_swap(i, --gt);
    } else {
      ++i;
    }
  }
  return {lt, gt};
}

template <class It, class Less>
void bfprt_select(It first, It last, It nth, Less less) {
  while (std::distance(first, last) > 5) {
    const auto pivot = *median_of_medians(first, last, less);
    auto [lt, gt] = partition3(first, last, pivot, less);
    if (nth < lt) {
      last = lt;
    } else if (nth >= gt) {
      first = gt;
    } else {
      return;
    }
  }
  insertion_sort(first, last, less);
}

}  // namespace detail

// Deterministic worst-case linear nth_element (median of medians). After the
// call *nth is the element that would be there in sorted order, everything
// before it is not greater and everything after it is not smaller.
template <class RandomIt, class Less = std::less<>>
void select_nth(RandomIt first, RandomIt nth, RandomIt last, Less less = {}) {
  if (first == last || nth == last) return;
  detail::bfprt_select(first, last, nth, less);
}

// Weighted median of (value, weight) pairs: the value x_k with
//   sum_{x_i < x_k} w_i < W/2   and   sum_{x_i > x_k} w_i <= W/2.
// Equal values are merged first. Throws InputError on empty input, negative
// or non-finite weights, or zero total weight.
double weighted_median(std::span<const std::pair<double, double>> values);

// In-place form for pairs with distinct values: reorders `values` so that
// the weighted median lands at the returned index, with smaller values
// before it and larger ones after. Worst-case linear. Weights must be
// non-negative with positive total; not validated.
std::size_t weighted_median_partition(std::span<std::pair<double, double>> values);

// Indices (ascending) of the k entries with the largest keys. Equal keys are
// ranked by position, earlier first. Throws InputError if k > keys.size().
std::vector<std::size_t> top_k_indices(std::span<const double> keys, std::size_t k);

// The k entries with largest key, returned in input order.
std::vector<std::pair<double, double>> select_top_k(
    std::span<const std::pair<double, double>> values, std::size_t k);

}  // namespace maxcov

#endif  // MAXCOV_SELECTION_HPP
