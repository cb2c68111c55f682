#include "isoclouds/assignment.hpp"

#include <algorithm>
#include <limits>

namespace isoclouds {

Assignment solve_assignment(const Matrix& costs) {
  if (costs.rows() != costs.cols()) throw Error(ErrorKind::InvalidInput, "assignment needs a square cost matrix");
  const auto k = static_cast<std::size_t>(costs.rows());
  Assignment out;
  out.row_to_col.assign(k, 0);
  if (k == 0) return out;

  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based rows/columns; column 0 is the virtual start.
  std::vector<double> u(k + 1, 0.0), v(k + 1, 0.0);
  std::vector<std::size_t> match(k + 1, 0), way(k + 1, 0);
  for (std::size_t i = 1; i <= k; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(k + 1, inf);
    std::vector<char> used(k + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const double cur = costs(static_cast<Eigen::Index>(i0 - 1), static_cast<Eigen::Index>(j - 1)) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= k; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  for (std::size_t j = 1; j <= k; ++j) out.row_to_col[match[j] - 1] = j - 1;
  // Sum the chosen entries directly rather than trusting -v[0].
  for (std::size_t i = 0; i < k; ++i) {
    out.cost += costs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(out.row_to_col[i]));
  }
  return out;
}

namespace {

// Kuhn's augmenting paths on the threshold graph.
bool perfect_matching_exists(const Matrix& costs, double threshold) {
  const auto k = static_cast<std::size_t>(costs.rows());
  std::vector<std::size_t> col_owner(k, k);
  std::vector<char> visited(k);
  auto cost = [&](std::size_t i, std::size_t j) {
    return costs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  };
  // Explicit stack avoids recursion depth issues on large k.
  for (std::size_t root = 0; root < k; ++root) {
    std::fill(visited.begin(), visited.end(), 0);
    std::vector<std::size_t> row_stack{root};
    std::vector<std::size_t> next_col{0};
    std::vector<std::size_t> via_col;
    bool found = false;
    while (!row_stack.empty() && !found) {
      const std::size_t i = row_stack.back();
      std::size_t& j = next_col.back();
      while (j < k && (visited[j] || cost(i, j) > threshold)) ++j;
      if (j == k) {
        row_stack.pop_back();
        next_col.pop_back();
        if (!via_col.empty()) via_col.pop_back();
        continue;
      }
      visited[j] = 1;
      const std::size_t col = j++;
      via_col.push_back(col);
      if (col_owner[col] == k) {
        found = true;
      } else {
        row_stack.push_back(col_owner[col]);
        next_col.push_back(0);
      }
    }
    if (!found) return false;
    // row_stack[t] is matched to via_col[t] along the augmenting path.
    for (std::size_t t = 0; t < via_col.size(); ++t) col_owner[via_col[t]] = row_stack[t];
  }
  return true;
}

}  // namespace

double bottleneck_assignment(const Matrix& costs) {
  if (costs.rows() != costs.cols()) throw Error(ErrorKind::InvalidInput, "bottleneck needs a square cost matrix");
  if (costs.size() == 0) return 0.0;
  std::vector<double> values(costs.data(), costs.data() + costs.size());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (perfect_matching_exists(costs, values[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return values[lo];
}

}  // namespace isoclouds
