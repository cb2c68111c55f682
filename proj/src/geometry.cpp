#include "isoclouds/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace isoclouds {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::NonEmbeddable: return "non-embeddable-input";
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::AmbiguousInput: return "ambiguous-input";
    case ErrorKind::Incomparable: return "incomparable-input";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::InputFormat: return "input-format";
    case ErrorKind::TooLarge: return "too-large";
  }
  return "unknown";
}

PointCloud::PointCloud(Matrix columns) : coords_(std::move(columns)) {
  if (coords_.rows() == 0) throw Error(ErrorKind::InvalidInput, "point cloud dimension must be positive");
  if (coords_.cols() == 0) throw Error(ErrorKind::InvalidInput, "point cloud must contain at least one point");
  if (!coords_.allFinite()) throw Error(ErrorKind::InvalidInput, "point cloud has non-finite coordinates");
}

PointCloud::PointCloud(std::size_t dim, const std::vector<std::vector<double>>& points) {
  Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].size() != dim) {
      throw Error(ErrorKind::DimensionMismatch, "point " + std::to_string(j) + " has " +
                                                    std::to_string(points[j].size()) + " coordinates, expected " +
                                                    std::to_string(dim));
    }
    for (std::size_t i = 0; i < dim; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = points[j][i];
  }
  *this = PointCloud(std::move(m));
}

PointCloud PointCloud::permuted(const std::vector<std::size_t>& order) const {
  if (order.size() != size()) throw Error(ErrorKind::InvalidInput, "permutation size mismatch");
  Matrix m(coords_.rows(), coords_.cols());
  std::vector<bool> seen(size(), false);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] >= size()) throw Error(ErrorKind::InvalidInput, "permutation index out of range");
    if (seen[order[i]]) throw Error(ErrorKind::InvalidInput, "permutation repeats index " + std::to_string(order[i]));
    seen[order[i]] = true;
    m.col(static_cast<Eigen::Index>(i)) = coords_.col(static_cast<Eigen::Index>(order[i]));
  }
  return PointCloud(std::move(m));
}

Isometry Isometry::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return {Matrix::Identity(n, n), Vector::Zero(n)};
}

Orientation Isometry::orientation() const {
  return linear.determinant() < 0 ? Orientation::Reverse : Orientation::Preserve;
}

Vector centre_of_mass(const PointCloud& cloud) {
  if (cloud.size() == 0) throw Error(ErrorKind::InvalidInput, "centre of mass of an empty cloud");
  // Each coordinate is summed in sorted order so that relabelling the points
  // cannot change a single bit of the result.
  Vector c(cloud.coords().rows());
  std::vector<double> row(cloud.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = cloud.coords()(i, static_cast<Eigen::Index>(j));
    std::sort(row.begin(), row.end());
    double sum = 0.0;
    for (double v : row) sum += v;
    c(i) = sum / static_cast<double>(row.size());
  }
  return c;
}

PointCloud translate_to_origin(const PointCloud& cloud, const Vector& origin) {
  if (static_cast<std::size_t>(origin.size()) != cloud.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "origin dimension differs from cloud dimension");
  }
  return PointCloud(Matrix(cloud.coords().colwise() - origin));
}

PointCloud centre_cloud(const PointCloud& cloud) { return translate_to_origin(cloud, centre_of_mass(cloud)); }

double distance(const Eigen::Ref<const Vector>& p, const Eigen::Ref<const Vector>& q) {
  if (p.size() != q.size()) throw Error(ErrorKind::DimensionMismatch, "distance between points of different dimensions");
  return (p - q).norm();
}

int orientation_sign(const Matrix& columns, Tolerance tol) {
  if (columns.rows() != columns.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "orientation sign needs n vectors in R^n");
  }
  double scale = 1.0;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) scale *= columns.col(j).norm();
  if (scale == 0.0) return 0;
  const double det = columns.partialPivLu().determinant();
  if (std::abs(det) <= tol.eps_zero * scale) return 0;
  return det > 0 ? 1 : -1;
}

std::size_t affine_dimension(const PointCloud& cloud, Tolerance tol) {
  if (cloud.size() < 2) return 0;
  const Matrix diffs = cloud.coords().rightCols(cloud.coords().cols() - 1).colwise() - cloud.point(0);
  if (diffs.cwiseAbs().maxCoeff() == 0.0) return 0;
  Eigen::ColPivHouseholderQR<Matrix> qr(diffs);
  qr.setThreshold(tol.eps_zero);
  return static_cast<std::size_t>(qr.rank());
}

Isometry random_isometry(std::size_t dim, Orientation orientation, std::uint64_t seed) {
  if (dim == 0) throw Error(ErrorKind::InvalidInput, "isometry dimension must be positive");
  const auto n = static_cast<Eigen::Index>(dim);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> shift(-1.0, 1.0);

  Matrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fixing the signs of diag(R) makes Q Haar-distributed.
  for (Eigen::Index j = 0; j < n; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  const bool want_negative = orientation == Orientation::Reverse;
  if ((q.determinant() < 0) != want_negative) q.col(0) = -q.col(0);

  Vector t(n);
  for (Eigen::Index i = 0; i < n; ++i) t(i) = shift(rng);
  return {std::move(q), std::move(t)};
}

PointCloud apply_isometry(const PointCloud& cloud, const Isometry& f) {
  if (static_cast<std::size_t>(f.linear.rows()) != cloud.dim() || f.linear.rows() != f.linear.cols() ||
      f.translation.size() != f.linear.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "isometry dimension differs from cloud dimension");
  }
  return PointCloud(Matrix((f.linear * cloud.coords()).colwise() + f.translation));
}

PointCloud reflect(const PointCloud& cloud) {
  Matrix m = cloud.coords();
  m.row(m.rows() - 1) *= -1.0;
  return PointCloud(std::move(m));
}

}  // namespace isoclouds
