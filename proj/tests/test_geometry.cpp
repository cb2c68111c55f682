#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "isoclouds/geometry.hpp"

using namespace isoclouds;

namespace {

std::vector<double> sorted_distances(const PointCloud& c) {
  std::vector<double> out;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) out.push_back(distance(c.point(i), c.point(j)));
  std::sort(out.begin(), out.end());
  return out;
}

Matrix cols(std::initializer_list<std::initializer_list<double>> vs) {
  std::vector<std::vector<double>> v;
  for (auto& x : vs) v.emplace_back(x);
  return PointCloud(v.front().size(), v).coords();
}

}  // namespace

TEST_CASE("point cloud validation") {
  CHECK_THROWS_AS(PointCloud(2, {}), Error);
  CHECK_THROWS_AS(PointCloud(2, {{1, 2}, {3}}), Error);
  CHECK_THROWS_AS(PointCloud(1, {{std::nan("")}}), Error);
  CHECK_THROWS_AS(PointCloud(Matrix(0, 3)), Error);
  const PointCloud c(2, {{1, 2}, {3, 4}});
  CHECK(c.dim() == 2);
  CHECK(c.size() == 2);
  CHECK(c.point(1)(0) == 3);
}

TEST_CASE("centre of mass") {
  CHECK(centre_of_mass(fixtures::square_s()).norm() == doctest::Approx(0.0));
  const Vector single = centre_of_mass(PointCloud(2, {{5, 7}}));
  CHECK(single(0) == 5);
  CHECK(single(1) == 7);
  const Vector r = centre_of_mass(fixtures::triangle_r());
  CHECK(r(0) == doctest::Approx(4.0 / 3.0));
  CHECK(r(1) == doctest::Approx(1.0));
}

TEST_CASE("centring") {
  CHECK(centre_cloud(fixtures::square_s()) == fixtures::square_s());
  const PointCloud c = centre_cloud(PointCloud(2, {{1, 1}, {3, 1}}));
  CHECK(c.point(0)(0) == doctest::Approx(-1));
  CHECK(c.point(0)(1) == doctest::Approx(0));
  CHECK(c.point(1)(0) == doctest::Approx(1));

  const PointCloud r = centre_cloud(fixtures::triangle_r());
  CHECK(r.point(1)(0) == doctest::Approx(4 - 4.0 / 3.0));
  CHECK(r.point(2)(1) == doctest::Approx(2.0));

  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const PointCloud once = centre_cloud(fixtures::random_cloud(rng, 6, 3, 10.0));
    CHECK(centre_of_mass(once).norm() <= 1e-9);
    CHECK((centre_cloud(once).coords() - once.coords()).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("euclidean distance") {
  Vector a(2), b(2);
  a << 0, 0;
  b << 3, 4;
  CHECK(distance(a, b) == doctest::Approx(5));
  CHECK(distance(b, b) == 0);
  const PointCloud t = fixtures::trapezoid_t();
  CHECK(distance(t.point(0), t.point(1)) == doctest::Approx(2));
  CHECK_THROWS_AS(distance(a, Vector::Zero(3)), Error);
}

TEST_CASE("orientation signs") {
  // Collinear p1, 0, p4 of the square.
  CHECK(orientation_sign(cols({{-2, 0}, {-1, 0}})) == 0);
  CHECK(orientation_sign(cols({{4, 4}, {-3, 0}})) == 1);
  CHECK(orientation_sign(cols({{-3, 0}, {4, 4}})) == -1);
  CHECK(orientation_sign(cols({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 1);
  // Tolerance is relative to the column norms, so scaling does not matter.
  CHECK(orientation_sign(cols({{1e-6, 0}, {0, 1e-6}})) == 1);
  CHECK(orientation_sign(cols({{1e6, 0}, {1e6, 1e-5}})) == 0);
  CHECK(orientation_sign(cols({{1, 0}, {1, 1e-6}})) == 1);
}

TEST_CASE("orientation sign is antisymmetric and vanishes exactly on flat sets") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
    const PointCloud c = fixtures::random_cloud(rng, n, n);
    Matrix m = c.coords();
    const int s = orientation_sign(m);
    CHECK(s != 0);
    m.col(0).swap(m.col(1));
    CHECK(orientation_sign(m) == -s);
    // Make the last column a combination of the others.
    m.col(static_cast<Eigen::Index>(n - 1)) = 0.3 * m.col(0) - 1.7 * m.col(static_cast<Eigen::Index>(n - 2));
    CHECK(orientation_sign(m) == 0);
    Matrix with_origin(n, n + 1);
    with_origin << Vector::Zero(static_cast<Eigen::Index>(n)), m;
    CHECK(affine_dimension(PointCloud(with_origin)) < n);
  }
}

TEST_CASE("affine dimension") {
  CHECK(affine_dimension(PointCloud(2, {{0, 0}, {1, 1}})) == 1);
  CHECK(affine_dimension(PointCloud(2, {{3, 3}})) == 0);
  CHECK(affine_dimension(fixtures::triangle_r()) == 2);
  CHECK(affine_dimension(PointCloud(3, {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {-1, -1, -1}})) == 1);
  CHECK(affine_dimension(PointCloud(2, {{1, 1}, {1, 1}})) == 0);
}

TEST_CASE("random isometries") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Isometry p = random_isometry(n, Orientation::Preserve, seed);
      const Isometry r = random_isometry(n, Orientation::Reverse, seed);
      const Matrix id = Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      CHECK((p.linear.transpose() * p.linear - id).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((r.linear.transpose() * r.linear - id).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(p.linear.determinant() == doctest::Approx(1.0));
      CHECK(r.linear.determinant() == doctest::Approx(-1.0));
      CHECK(p.orientation() == Orientation::Preserve);
      CHECK(r.orientation() == Orientation::Reverse);
      const Isometry again = random_isometry(n, Orientation::Preserve, seed);
      CHECK(again.linear == p.linear);
      CHECK(again.translation == p.translation);
    }
  }
}

TEST_CASE("applying isometries preserves distances") {
  const PointCloud r = fixtures::triangle_r();
  CHECK(apply_isometry(r, Isometry::identity(2)) == r);
  CHECK(reflect(r) == fixtures::triangle_r_bar());
  CHECK_THROWS_AS(apply_isometry(r, Isometry::identity(3)), Error);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 4);
    const PointCloud c = fixtures::random_cloud(rng, 7, n, 5.0);
    const auto orient = t % 2 ? Orientation::Preserve : Orientation::Reverse;
    const auto before = sorted_distances(c);
    const auto after = sorted_distances(apply_isometry(c, random_isometry(n, orient, rng())));
    for (std::size_t i = 0; i < before.size(); ++i) CHECK(std::abs(before[i] - after[i]) <= 1e-9 * (1 + before[i]));
  }
}

TEST_CASE("permuting points") {
  const PointCloud t = fixtures::trapezoid_t();
  const PointCloud p = t.permuted({3, 2, 1, 0});
  CHECK(p.point(0) == t.point(3));
  CHECK_THROWS_AS(t.permuted({0, 0, 1, 2}), Error);
  CHECK_THROWS_AS(t.permuted({0, 1}), Error);
}
