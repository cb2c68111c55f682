#include "isoclouds/transport.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

namespace isoclouds {

namespace {

template <typename Mass>
struct Edge {
  std::size_t to;
  std::size_t rev;
  Mass cap;
  double cost;
};

template <typename Mass>
constexpr Mass negligible() {
  if constexpr (std::is_floating_point_v<Mass>) {
    return Mass(1e-15);
  } else {
    return Mass(0);
  }
}

template <typename Mass>
TransportPlan solve(const std::vector<Mass>& supply, const std::vector<Mass>& demand, const Matrix& costs) {
  const std::size_t k = supply.size();
  const std::size_t l = demand.size();
  if (static_cast<std::size_t>(costs.rows()) != k || static_cast<std::size_t>(costs.cols()) != l) {
    throw Error(ErrorKind::InvalidInput, "cost matrix shape does not match the masses");
  }
  Mass total_supply = 0, total_demand = 0;
  for (Mass s : supply) {
    if (s < 0) throw Error(ErrorKind::InvalidInput, "negative supply");
    total_supply += s;
  }
  for (Mass d : demand) {
    if (d < 0) throw Error(ErrorKind::InvalidInput, "negative demand");
    total_demand += d;
  }
  if constexpr (std::is_floating_point_v<Mass>) {
    if (std::abs(total_supply - total_demand) > 1e-12 * std::max<Mass>(1, total_supply)) {
      throw Error(ErrorKind::InvalidInput, "transport masses are unbalanced");
    }
  } else {
    if (total_supply != total_demand) throw Error(ErrorKind::InvalidInput, "transport masses are unbalanced");
  }
  if ((costs.array() < 0).any() || !costs.allFinite()) {
    throw Error(ErrorKind::InvalidInput, "transport costs must be finite and non-negative");
  }

  // Nodes: sources [0, k), sinks [k, k + l), S = k + l, T = k + l + 1.
  const std::size_t source = k + l, sink = k + l + 1, nodes = k + l + 2;
  std::vector<std::vector<Edge<Mass>>> graph(nodes);
  auto add_edge = [&](std::size_t a, std::size_t b, Mass cap, double cost) {
    graph[a].push_back({b, graph[b].size(), cap, cost});
    graph[b].push_back({a, graph[a].size() - 1, Mass(0), -cost});
  };
  for (std::size_t i = 0; i < k; ++i) add_edge(source, i, supply[i], 0.0);
  for (std::size_t j = 0; j < l; ++j) add_edge(k + j, sink, demand[j], 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < l; ++j)
      add_edge(i, k + j, total_supply, costs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> potential(nodes, 0.0), dist(nodes);
  std::vector<std::size_t> prev_node(nodes), prev_edge(nodes);
  Mass remaining = total_supply;
  using Item = std::pair<double, std::size_t>;
  while (remaining > negligible<Mass>()) {
    std::fill(dist.begin(), dist.end(), inf);
    dist[source] = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.push({0.0, source});
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (std::size_t e = 0; e < graph[u].size(); ++e) {
        const Edge<Mass>& edge = graph[u][e];
        if (edge.cap <= negligible<Mass>()) continue;
        // Round-off can push reduced costs slightly below zero.
        const double reduced = std::max(0.0, edge.cost + potential[u] - potential[edge.to]);
        if (dist[u] + reduced < dist[edge.to]) {
          dist[edge.to] = dist[u] + reduced;
          prev_node[edge.to] = u;
          prev_edge[edge.to] = e;
          heap.push({dist[edge.to], edge.to});
        }
      }
    }
    if (dist[sink] == inf) throw Error(ErrorKind::InvalidInput, "transport problem is infeasible");
    for (std::size_t v = 0; v < nodes; ++v) potential[v] += std::min(dist[v], dist[sink]);

    Mass push = remaining;
    for (std::size_t v = sink; v != source; v = prev_node[v]) {
      push = std::min(push, graph[prev_node[v]][prev_edge[v]].cap);
    }
    for (std::size_t v = sink; v != source; v = prev_node[v]) {
      Edge<Mass>& edge = graph[prev_node[v]][prev_edge[v]];
      edge.cap -= push;
      graph[v][edge.rev].cap += push;
    }
    remaining -= push;
  }

  TransportPlan plan;
  plan.flow = Matrix::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
  for (std::size_t i = 0; i < k; ++i) {
    for (const Edge<Mass>& edge : graph[i]) {
      if (edge.to < k || edge.to >= k + l) continue;
      // Flow on i -> j equals the residual capacity of its reverse edge.
      const Mass f = graph[edge.to][edge.rev].cap;
      plan.flow(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(edge.to - k)) = static_cast<double>(f);
      plan.cost += static_cast<double>(f) * edge.cost;
    }
  }
  return plan;
}

}  // namespace

TransportPlan min_cost_transport(const std::vector<std::int64_t>& supply, const std::vector<std::int64_t>& demand,
                                 const Matrix& costs) {
  return solve(supply, demand, costs);
}

TransportPlan min_cost_transport(const std::vector<double>& supply, const std::vector<double>& demand,
                                 const Matrix& costs) {
  return solve(supply, demand, costs);
}

}  // namespace isoclouds
