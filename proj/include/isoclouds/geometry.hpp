#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "isoclouds/error.hpp"

namespace isoclouds {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Numerical zero threshold. Determinants and ranks are classified relative
/// to the magnitude of their inputs, so one value works at any scale.
struct Tolerance {
  double eps_zero = 1e-9;
};

/// m unlabelled points in R^n, stored column-wise in an n x m matrix.
class PointCloud {
 public:
  PointCloud() = default;

  /// Throws InvalidInput on non-finite coordinates, dim == 0 or no points.
  explicit PointCloud(Matrix columns);
  PointCloud(std::size_t dim, const std::vector<std::vector<double>>& points);

  std::size_t dim() const { return static_cast<std::size_t>(coords_.rows()); }
  std::size_t size() const { return static_cast<std::size_t>(coords_.cols()); }

  Eigen::Ref<const Vector> point(std::size_t i) const { return coords_.col(static_cast<Eigen::Index>(i)); }
  const Matrix& coords() const { return coords_; }

  /// Cloud with the points reordered; order[i] is the index of the new i-th point.
  PointCloud permuted(const std::vector<std::size_t>& order) const;

  friend bool operator==(const PointCloud& a, const PointCloud& b) {
    return a.coords_.rows() == b.coords_.rows() && a.coords_.cols() == b.coords_.cols() &&
           a.coords_ == b.coords_;
  }

 private:
  Matrix coords_;
};

enum class Orientation { Preserve, Reverse };

/// x -> linear * x + translation, with linear orthogonal.
struct Isometry {
  Matrix linear;
  Vector translation;

  static Isometry identity(std::size_t dim);
  Orientation orientation() const;
};

Vector centre_of_mass(const PointCloud& cloud);
PointCloud centre_cloud(const PointCloud& cloud);

/// Translates the cloud so that `origin` becomes 0.
PointCloud translate_to_origin(const PointCloud& cloud, const Vector& origin);

double distance(const Eigen::Ref<const Vector>& p, const Eigen::Ref<const Vector>& q);

/// Sign of det[v_1 ... v_n] for the n x n matrix of column vectors. Zero when
/// |det| <= eps_zero * prod ||v_i||.
int orientation_sign(const Matrix& columns, Tolerance tol = {});

/// Numerical rank of {p_i - p_1} under the same relative threshold.
std::size_t affine_dimension(const PointCloud& cloud, Tolerance tol = {});

/// Haar-distributed orthogonal part with the requested determinant and a
/// translation drawn from [-1, 1]^n. Deterministic in `seed`.
Isometry random_isometry(std::size_t dim, Orientation orientation, std::uint64_t seed);

PointCloud apply_isometry(const PointCloud& cloud, const Isometry& f);

/// Reflection in the last coordinate hyperplane (x_n -> -x_n); in the plane
/// this is the reflection in the x-axis.
PointCloud reflect(const PointCloud& cloud);

}  // namespace isoclouds
