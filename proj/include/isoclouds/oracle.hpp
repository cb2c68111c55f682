#pragma once

#include <vector>

#include "isoclouds/invariants.hpp"
#include "isoclouds/metrics.hpp"

namespace isoclouds {

/// Largest cloud the brute-force search accepts.
inline constexpr std::size_t kOracleMaxPoints = 10;

struct AlignmentResult {
  bool matched = false;
  double rms = 0.0;
  double max_residual = 0.0;
  std::vector<std::size_t> permutation;  // point i of C maps to point permutation[i] of C'
  Isometry transform;
};

/// Orthogonal Procrustes: the isometry f minimizing sum |f(a_i) - b_i|^2 for
/// matched columns. With rigid, det(f) is forced to +1.
Isometry procrustes(const Matrix& a, const Matrix& b, bool rigid);

/// Ground-truth isometry test. Enumerates bijections that preserve all
/// pairwise distances within tol (pruned by sorted distance profiles), fits
/// each with Procrustes and accepts when the max residual is <= tol.
/// Throws TooLarge for clouds above kOracleMaxPoints.
AlignmentResult brute_force_isometric(const PointCloud& a, const PointCloud& b, Equivalence mode, double tol = 1e-6);

/// Points in R^n reproducing D: p_1 at 0, p_2 on the first axis, and every
/// later point placed in the next free coordinate with a non-negative value.
/// Throws NonEmbeddable if D is not realizable in R^n.
PointCloud reconstruct_from_distances(const DistanceMatrix& d, std::size_t dim, Tolerance tol = {});

/// Cloud of the basis points followed by one point per column, placed by
/// intersecting the n spheres and choosing the side given by the sign.
/// Throws AmbiguousInput if the basis does not span n - 1 dimensions.
PointCloud reconstruct_from_ord(const Ord& ord, Tolerance tol = {});

}  // namespace isoclouds
