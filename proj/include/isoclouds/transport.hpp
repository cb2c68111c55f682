#pragma once

#include <cstdint>
#include <vector>

#include "isoclouds/geometry.hpp"

namespace isoclouds {

struct TransportPlan {
  double cost = 0.0;
  Matrix flow;  // k x l, in the same units as the supplies
};

/// Balanced min-cost transportation by successive shortest paths with
/// Dijkstra on reduced costs. Integer masses make the optimum exact up to
/// the float costs. Requires equal totals and non-negative costs.
TransportPlan min_cost_transport(const std::vector<std::int64_t>& supply, const std::vector<std::int64_t>& demand,
                                 const Matrix& costs);

/// Same solver on real masses; masses below 1e-15 are treated as exhausted.
TransportPlan min_cost_transport(const std::vector<double>& supply, const std::vector<double>& demand,
                                 const Matrix& costs);

}  // namespace isoclouds
