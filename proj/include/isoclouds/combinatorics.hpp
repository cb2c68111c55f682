#pragma once

#include <cstdint>
#include <algorithm>
#include <utility>
#include <vector>

namespace isoclouds {

/// binom(n, k); throws Overflow if it does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// All k-subsets of {0, ..., n-1} as increasing index lists, in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k);

/// All permutations of {0, ..., k-1} in lexicographic order, paired with their signs.
struct SignedPermutation {
  std::vector<std::size_t> image;  // i -> image[i]
  int sign;
};
std::vector<SignedPermutation> signed_permutations(std::size_t k);

/// Stable merge sort that stays in bounds for any comparator, including the
/// tolerance-based orders used for floating-point keys that are not strict
/// weak orders near ties.
template <typename T, typename Less>
void tolerant_sort(std::vector<T>& items, Less less) {
  if (items.size() < 2) return;
  std::vector<T> buffer(items.size());
  for (std::size_t width = 1; width < items.size(); width *= 2) {
    for (std::size_t lo = 0; lo < items.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, items.size());
      const std::size_t hi = std::min(lo + 2 * width, items.size());
      std::size_t a = lo, b = mid, out = lo;
      while (a < mid && b < hi) buffer[out++] = less(items[b], items[a]) ? std::move(items[b++]) : std::move(items[a++]);
      while (a < mid) buffer[out++] = std::move(items[a++]);
      while (b < hi) buffer[out++] = std::move(items[b++]);
    }
    items.swap(buffer);
  }
}

}  // namespace isoclouds
