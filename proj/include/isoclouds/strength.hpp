#pragma once

#include <cstdint>
#include <vector>

#include "isoclouds/geometry.hpp"

namespace isoclouds {

/// Pairwise distances of h points, strict upper triangle in row-major order:
/// (0,1), (0,2), ..., (0,h-1), (1,2), ...
class SimplexDistances {
 public:
  SimplexDistances() = default;

  /// Throws InvalidInput if the entry count is not h(h-1)/2 or an entry is
  /// negative or non-finite.
  SimplexDistances(std::size_t points, std::vector<double> upper);

  static SimplexDistances from_points(const std::vector<Vector>& points);

  std::size_t points() const { return points_; }
  const std::vector<double>& upper() const { return upper_; }

  /// Symmetric access; at(i, i) == 0.
  double at(std::size_t i, std::size_t j) const;

 private:
  std::size_t points_ = 0;
  std::vector<double> upper_;
};

/// Number of fixed-point-free permutations of k elements. Throws Overflow
/// once the value no longer fits in 64 bits (k > 20).
std::uint64_t rencontre(unsigned k);

/// p(A): half the sum of all pairwise distances (the half-perimeter of a
/// triangle, L/2 for a segment of length L).
double half_sum_distances(const SimplexDistances& s);

/// Squared volume of the (h-1)-simplex from the Cayley-Menger determinant.
/// Small negative round-off (|V^2| <= 1e-9 p^{2(h-1)}) is clamped to 0;
/// anything more negative throws NonEmbeddable.
double cayley_menger_volume_sq(const SimplexDistances& s);

/// sigma(A) = V^2 / p^{2n-1} for the n-simplex on h = n + 1 points; for n = 1
/// sigma = 2 |p_0 - p_1|. Throws DegenerateInput when p(A) = 0.
double strength(const SimplexDistances& s);

/// Lipschitz constant c_n of the strength: 2 for n = 1, 2*sqrt(3) for n = 2,
/// and the rencontre-number bound for n >= 3.
double lipschitz_constant(std::size_t n);

/// sign * sigma(A) / c_n with n = h - 1.
double normalized_signed_strength(const SimplexDistances& s, int sign);

}  // namespace isoclouds
