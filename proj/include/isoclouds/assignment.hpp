#pragma once

#include <vector>

#include "isoclouds/geometry.hpp"

namespace isoclouds {

struct Assignment {
  std::vector<std::size_t> row_to_col;
  double cost = 0.0;
};

/// Minimum-cost perfect assignment on a square cost matrix (Hungarian method
/// with potentials, O(k^3)). Throws InvalidInput for non-square input.
Assignment solve_assignment(const Matrix& costs);

/// Smallest threshold t among the matrix entries such that the bipartite
/// graph {(i, j) : costs(i, j) <= t} has a perfect matching. Binary search
/// over the sorted distinct entries with augmenting-path matching at each
/// step. Returns 0 for an empty matrix.
double bottleneck_assignment(const Matrix& costs);

}  // namespace isoclouds
