#include <doctest.h>

#include <numeric>
#include <random>

#include "isoclouds/assignment.hpp"
#include "isoclouds/metrics.hpp"
#include "isoclouds/transport.hpp"
#include "oracles.hpp"

using namespace isoclouds;

namespace {

Matrix random_costs(std::mt19937_64& rng, Eigen::Index k, Eigen::Index l, bool integer) {
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::uniform_int_distribution<int> small(0, 4);
  Matrix c(k, l);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < l; ++j) c(i, j) = integer ? small(rng) : u(rng);
  return c;
}

std::vector<std::uint64_t> random_counts(std::mt19937_64& rng, std::size_t k) {
  std::uniform_int_distribution<std::uint64_t> u(1, 6);
  std::vector<std::uint64_t> c(k);
  for (auto& x : c) x = u(rng);
  return c;
}

Matrix square(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("assignment examples") {
  CHECK(lac(square({{0, 1}, {1, 0}})) == 0.0);
  CHECK(lac(square({{1, 2}, {3, 4}})) == doctest::Approx(2.5));
  CHECK(lac(square({{7.5}})) == 7.5);
  CHECK_THROWS_AS(solve_assignment(Matrix(2, 3)), Error);
  const Assignment a = solve_assignment(square({{4, 1, 3}, {2, 0, 5}, {3, 2, 2}}));
  CHECK(a.cost == doctest::Approx(5));
  CHECK(a.row_to_col == std::vector<std::size_t>{1, 0, 2});
}

TEST_CASE("assignment and bottleneck match brute force") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 500; ++t) {
    const auto k = static_cast<Eigen::Index>(1 + t % 7);
    const Matrix c = random_costs(rng, k, k, t % 3 == 0);
    const Assignment a = solve_assignment(c);
    CHECK(a.cost == doctest::Approx(oracles::brute_assignment(c)).epsilon(1e-12));
    // The returned bijection realises the cost.
    double sum = 0.0;
    std::vector<std::size_t> used(a.row_to_col);
    for (Eigen::Index i = 0; i < k; ++i) sum += c(i, static_cast<Eigen::Index>(a.row_to_col[static_cast<std::size_t>(i)]));
    std::sort(used.begin(), used.end());
    CHECK(std::adjacent_find(used.begin(), used.end()) == used.end());
    CHECK(sum == doctest::Approx(a.cost).epsilon(1e-12));
    CHECK(bottleneck_assignment(c) == oracles::brute_bottleneck(c));
  }
  CHECK(bottleneck_assignment(Matrix(0, 0)) == 0.0);
}

TEST_CASE("bottleneck on point sets") {
  Matrix a(2, 2), b(2, 2);
  a << 0, 1, 0, 0;
  b << 0, 1, 0, 0.5;
  CHECK(bottleneck(a, a) == 0.0);
  CHECK(bottleneck(a, b) == doctest::Approx(0.5));
  CHECK_THROWS_AS(bottleneck(a, Matrix(2, 3)), Error);
}

TEST_CASE("EMD examples") {
  Matrix c(1, 2);
  c << 3, 5;
  CHECK(emd({1.0}, {0.5, 0.5}, c) == doctest::Approx(4));
  CHECK(emd({0.5, 0.5}, {0.5, 0.5}, square({{0, 2}, {2, 0}})) == 0.0);
  CHECK_THROWS_AS(emd({0.5}, {1.0}, Matrix::Ones(1, 1)), Error);
  CHECK(emd({1, 2}, 3, {3}, 3, square({{1}, {4}})) == doctest::Approx(3));
}

TEST_CASE("EMD matches the LP oracle") {
  std::mt19937_64 rng(202);
  for (int t = 0; t < 500; ++t) {
    const std::size_t k = 1 + static_cast<std::size_t>(t % 4);
    const std::size_t l = 1 + static_cast<std::size_t>((t / 4) % 4);
    const auto cx = random_counts(rng, k);
    const auto cy = random_counts(rng, l);
    const std::uint64_t tx = std::accumulate(cx.begin(), cx.end(), std::uint64_t{0});
    const std::uint64_t ty = std::accumulate(cy.begin(), cy.end(), std::uint64_t{0});
    std::vector<double> wx, wy;
    for (auto v : cx) wx.push_back(static_cast<double>(v) / static_cast<double>(tx));
    for (auto v : cy) wy.push_back(static_cast<double>(v) / static_cast<double>(ty));
    const Matrix c = random_costs(rng, static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l), t % 5 == 0);
    const double expected = oracles::lp_transport(wx, wy, c);
    CHECK(std::abs(emd(cx, tx, cy, ty, c) - expected) <= 1e-9);
    CHECK(std::abs(emd(wx, wy, c) - expected) <= 1e-9);
  }
}

TEST_CASE("integer transport plans are feasible") {
  std::mt19937_64 rng(303);
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = 1 + static_cast<std::size_t>(t % 5), l = 1 + static_cast<std::size_t>((t + 2) % 5);
    std::vector<std::int64_t> s(k, 0), d(l, 0);
    std::uniform_int_distribution<std::size_t> pick_s(0, k - 1), pick_d(0, l - 1);
    for (int u = 0; u < 12; ++u) {
      ++s[pick_s(rng)];
      ++d[pick_d(rng)];
    }
    const Matrix c = random_costs(rng, static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l), false);
    const TransportPlan p = min_cost_transport(s, d, c);
    CHECK((p.flow.array() >= 0).all());
    for (std::size_t i = 0; i < k; ++i) CHECK(p.flow.row(static_cast<Eigen::Index>(i)).sum() == doctest::Approx(s[i]));
    for (std::size_t j = 0; j < l; ++j) CHECK(p.flow.col(static_cast<Eigen::Index>(j)).sum() == doctest::Approx(d[j]));
    CHECK((p.flow.array() * c.array()).sum() == doctest::Approx(p.cost));
  }
  CHECK_THROWS_AS(min_cost_transport(std::vector<std::int64_t>{2}, std::vector<std::int64_t>{1}, Matrix::Ones(1, 1)),
                  Error);
}
