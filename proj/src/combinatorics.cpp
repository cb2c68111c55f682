#include "isoclouds/combinatorics.hpp"

#include <string>

#include "isoclouds/error.hpp"

namespace isoclouds {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > static_cast<unsigned __int128>(UINT64_MAX)) {
      throw Error(ErrorKind::Overflow, "binomial(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows");
    }
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<SignedPermutation> signed_permutations(std::size_t k) {
  std::vector<SignedPermutation> out;
  std::vector<std::size_t> p(k);
  for (std::size_t i = 0; i < k; ++i) p[i] = i;
  do {
    // Parity by counting inversions; k is tiny.
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) inversions += p[i] > p[j];
    out.push_back({p, inversions % 2 == 0 ? 1 : -1});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace isoclouds
