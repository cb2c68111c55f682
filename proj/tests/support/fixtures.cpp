#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "isoclouds/strength.hpp"

namespace fixtures {

using isoclouds::Matrix;
using isoclouds::Vector;

PointCloud trapezoid_t() { return PointCloud(2, {{1, 1}, {-1, 1}, {-2, 0}, {2, 0}}); }
PointCloud kite_k() { return PointCloud(2, {{0, 1}, {-1, 0}, {0, -1}, {3, 0}}); }
PointCloud triangle_r() { return PointCloud(2, {{0, 0}, {4, 0}, {0, 3}}); }
PointCloud triangle_r_bar() { return PointCloud(2, {{0, 0}, {4, 0}, {0, -3}}); }
PointCloud square_s() { return PointCloud(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}); }

namespace {

struct PrintedColumn {
  double d1, d2;
  int sign;
};

isoclouds::RelativeForm printed(double base, PrintedColumn a, PrintedColumn b) {
  isoclouds::RelativeForm f{isoclouds::InvariantKind::Osd, isoclouds::SimplexDistances(2, {base}), {}};
  for (const PrintedColumn& c : {a, b}) {
    const isoclouds::SimplexDistances tri(3, {base, c.d1, c.d2});
    f.columns.push_back({{c.d1, c.d2}, c.sign, isoclouds::normalized_signed_strength(tri, c.sign)});
  }
  return f;
}

const double r2 = std::sqrt(2.0), r10 = std::sqrt(10.0);

}  // namespace

std::vector<isoclouds::RelativeForm> printed_ords_t() {
  return {
      printed(r2, {2, r10, -1}, {r10, 4, -1}),   printed(r2, {2, r10, 1}, {r10, 4, 1}),
      printed(2, {r2, r10, -1}, {r10, r2, -1}),  printed(r10, {r2, 2, 1}, {4, r2, -1}),
      printed(r10, {r2, 2, -1}, {4, r2, 1}),     printed(4, {r2, r10, 1}, {r10, r2, 1}),
  };
}

std::vector<isoclouds::RelativeForm> printed_ords_k() {
  return {
      printed(r2, {2, r2, -1}, {r10, 4, -1}),    printed(r2, {2, r2, 1}, {r10, 4, 1}),
      printed(2, {r2, r2, -1}, {r10, r10, 1}),   printed(r10, {r2, 4, -1}, {2, r10, -1}),
      printed(r10, {r2, 4, 1}, {2, r10, 1}),     printed(4, {r2, r10, 1}, {r2, r10, -1}),
  };
}

PointCloud random_cloud(std::mt19937_64& rng, std::size_t m, std::size_t n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix pts(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (Eigen::Index j = 0; j < pts.cols(); ++j)
    for (Eigen::Index i = 0; i < pts.rows(); ++i) pts(i, j) = u(rng);
  return PointCloud(std::move(pts));
}

PointCloud perturb(const PointCloud& cloud, double eps, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix pts = cloud.coords();
  for (Eigen::Index j = 0; j < pts.cols(); ++j) {
    Vector dir(pts.rows());
    for (Eigen::Index i = 0; i < dir.size(); ++i) dir(i) = g(rng);
    pts.col(j) += dir.normalized() * (eps * u(rng));
  }
  return PointCloud(std::move(pts));
}

PointCloud moved_copy(const PointCloud& cloud, isoclouds::Orientation orientation, std::mt19937_64& rng) {
  const auto f = isoclouds::random_isometry(cloud.dim(), orientation, rng());
  std::vector<std::size_t> order(cloud.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  return isoclouds::apply_isometry(cloud, f).permuted(order);
}

}  // namespace fixtures
