#include "isoclouds/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace isoclouds {

Isometry procrustes(const Matrix& a, const Matrix& b, bool rigid) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.cols() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "Procrustes needs two non-empty point sets of equal shape");
  }
  const Vector ca = a.rowwise().mean();
  const Vector cb = b.rowwise().mean();
  const Matrix h = (a.colwise() - ca) * (b.colwise() - cb).transpose();
  Eigen::JacobiSVD<Matrix> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix v = svd.matrixV();
  const Matrix& u = svd.matrixU();
  if (rigid && (v * u.transpose()).determinant() < 0) v.col(v.cols() - 1) *= -1.0;
  Matrix r = v * u.transpose();
  Vector t = cb - r * ca;
  return {std::move(r), std::move(t)};
}

namespace {

Matrix distance_table(const PointCloud& c) {
  const auto m = static_cast<Eigen::Index>(c.size());
  Matrix d(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) d(i, j) = (c.coords().col(i) - c.coords().col(j)).norm();
  return d;
}

struct Search {
  const PointCloud& a;
  const PointCloud& b;
  bool rigid;
  double tol;
  Matrix da, db;
  std::vector<std::vector<std::size_t>> candidates;
  std::vector<std::size_t> image;
  std::vector<char> used;
  AlignmentResult best;

  bool evaluate() {
    Matrix target(b.coords().rows(), b.coords().cols());
    for (std::size_t i = 0; i < image.size(); ++i)
      target.col(static_cast<Eigen::Index>(i)) = b.coords().col(static_cast<Eigen::Index>(image[i]));
    Isometry f = procrustes(a.coords(), target, rigid);
    const Matrix residual = ((f.linear * a.coords()).colwise() + f.translation) - target;
    const double worst = residual.colwise().norm().maxCoeff();
    const double rms = std::sqrt(residual.squaredNorm() / static_cast<double>(residual.cols()));
    if (best.permutation.empty() || worst < best.max_residual) {
      best = {worst <= tol, rms, worst, image, std::move(f)};
    }
    return best.matched;
  }

  bool extend(std::size_t i) {
    if (i == image.size()) return evaluate();
    for (std::size_t j : candidates[i]) {
      if (used[j]) continue;
      bool consistent = true;
      for (std::size_t k = 0; k < i && consistent; ++k) {
        consistent = std::abs(da(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) -
                              db(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(image[k]))) <= 2 * tol;
      }
      if (!consistent) continue;
      used[j] = 1;
      image[i] = j;
      if (extend(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  }
};

}  // namespace

AlignmentResult brute_force_isometric(const PointCloud& a, const PointCloud& b, Equivalence mode, double tol) {
  if (a.dim() != b.dim() || a.size() != b.size()) {
    throw Error(ErrorKind::Incomparable, "clouds differ in point count or dimension");
  }
  if (a.size() > kOracleMaxPoints) {
    throw Error(ErrorKind::TooLarge, "brute-force isometry test is limited to " + std::to_string(kOracleMaxPoints) +
                                         " points, got " + std::to_string(a.size()));
  }
  const std::size_t m = a.size();
  Search s{a, b, mode == Equivalence::Rigid, tol, distance_table(a), distance_table(b), {}, std::vector<std::size_t>(m),
           std::vector<char>(m, 0), {}};

  // Points can only correspond if their sorted distance profiles agree.
  auto profile = [](const Matrix& d, Eigen::Index i) {
    std::vector<double> row(static_cast<std::size_t>(d.cols()));
    for (Eigen::Index j = 0; j < d.cols(); ++j) row[static_cast<std::size_t>(j)] = d(i, j);
    std::sort(row.begin(), row.end());
    return row;
  };
  std::vector<std::vector<double>> pa(m), pb(m);
  for (std::size_t i = 0; i < m; ++i) {
    pa[i] = profile(s.da, static_cast<Eigen::Index>(i));
    pb[i] = profile(s.db, static_cast<Eigen::Index>(i));
  }
  s.candidates.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      bool ok = true;
      for (std::size_t t = 0; t < m && ok; ++t) ok = std::abs(pa[i][t] - pb[j][t]) <= 2 * tol;
      if (ok) s.candidates[i].push_back(j);
    }
    if (s.candidates[i].empty()) return s.best;
  }
  s.extend(0);
  return s.best;
}

PointCloud reconstruct_from_distances(const DistanceMatrix& d, std::size_t dim, Tolerance tol) {
  const std::size_t h = d.points();
  if (h == 0) throw Error(ErrorKind::InvalidInput, "cannot reconstruct an empty tuple");
  if (dim == 0) throw Error(ErrorKind::InvalidInput, "target dimension must be positive");
  double scale = 0.0;
  for (double v : d.upper()) scale = std::max(scale, v);
  const double flat = 1e-3 * tol.eps_zero * scale * scale;

  Matrix pts = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(h));
  std::vector<std::size_t> frame{0};  // affinely independent placed points, frame[0] at the origin
  for (std::size_t k = 1; k < h; ++k) {
    const std::size_t r = frame.size() - 1;  // current span dimension
    const double d0 = d.at(frame[0], k);
    Vector x = Vector::Zero(static_cast<Eigen::Index>(r));
    if (r > 0) {
      // 2 f_i . x = d_0^2 - d_i^2 + |f_i|^2 for frame points f_1..f_r.
      Matrix lhs(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
      Vector rhs(static_cast<Eigen::Index>(r));
      for (std::size_t i = 1; i <= r; ++i) {
        const Vector f = pts.col(static_cast<Eigen::Index>(frame[i])).head(static_cast<Eigen::Index>(r));
        lhs.row(static_cast<Eigen::Index>(i - 1)) = 2.0 * f.transpose();
        const double di = d.at(frame[i], k);
        rhs(static_cast<Eigen::Index>(i - 1)) = d0 * d0 - di * di + f.squaredNorm();
      }
      x = lhs.partialPivLu().solve(rhs);
    }
    const double height_sq = d0 * d0 - x.squaredNorm();
    auto col = pts.col(static_cast<Eigen::Index>(k));
    col.head(static_cast<Eigen::Index>(r)) = x;
    if (height_sq > flat && r < dim) {
      col(static_cast<Eigen::Index>(r)) = std::sqrt(height_sq);
      frame.push_back(k);
    } else if (std::abs(height_sq) > 1e3 * flat && height_sq < 0) {
      throw Error(ErrorKind::NonEmbeddable, "distances violate the Cayley-Menger conditions at point " +
                                               std::to_string(k));
    } else if (height_sq > 1e3 * flat) {
      throw Error(ErrorKind::NonEmbeddable, "distances need more than " + std::to_string(dim) + " dimensions");
    }
  }

  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = i + 1; j < h; ++j) {
      const double got = (pts.col(static_cast<Eigen::Index>(i)) - pts.col(static_cast<Eigen::Index>(j))).norm();
      if (std::abs(got - d.at(i, j)) > 1e-6 * std::max(1.0, scale)) {
        throw Error(ErrorKind::NonEmbeddable, "distances are not realizable in R^" + std::to_string(dim));
      }
    }
  }
  return PointCloud(std::move(pts));
}

PointCloud reconstruct_from_ord(const Ord& ord, Tolerance tol) {
  if (ord.kind != InvariantKind::Osd) throw Error(ErrorKind::InvalidInput, "reconstruction needs an ORD");
  const std::size_t n = ord.dim();
  const std::size_t m = n + ord.columns.size();
  Matrix pts = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));

  if (n == 1) {
    for (std::size_t c = 0; c < ord.columns.size(); ++c) {
      pts(0, static_cast<Eigen::Index>(c + 1)) = ord.columns[c].sign * ord.columns[c].distances[0];
    }
    return PointCloud(std::move(pts));
  }

  const PointCloud basis = reconstruct_from_distances(ord.basis, n - 1, tol);
  if (affine_dimension(basis, tol) != n - 1) {
    throw Error(ErrorKind::AmbiguousInput, "ORD basis spans fewer than n - 1 dimensions");
  }
  pts.topLeftCorner(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n)) = basis.coords();

  const auto k = static_cast<Eigen::Index>(n - 1);
  Matrix lhs(k, k);
  for (Eigen::Index i = 1; i <= k; ++i) lhs.row(i - 1) = 2.0 * (basis.coords().col(i) - basis.coords().col(0)).transpose();
  const auto lu = lhs.partialPivLu();

  Matrix diffs(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t c = 0; c < ord.columns.size(); ++c) {
    const Column& col = ord.columns[c];
    Vector rhs(k);
    for (Eigen::Index i = 1; i <= k; ++i) {
      const double d1 = col.distances[0], di = col.distances[static_cast<std::size_t>(i)];
      rhs(i - 1) = d1 * d1 - di * di + basis.coords().col(i).squaredNorm() - basis.coords().col(0).squaredNorm();
    }
    const Vector x = lu.solve(rhs);
    const double d1 = col.distances[0];
    double z = std::sqrt(std::max(0.0, d1 * d1 - (x - basis.coords().col(0)).squaredNorm()));
    if (col.sign == 0) z = 0.0;

    Vector q(static_cast<Eigen::Index>(n));
    q.head(k) = x;
    q(k) = z;
    if (col.sign != 0) {
      for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) diffs.col(i) = q - pts.col(i);
      // The determinant is linear in z with the basis on z = 0.
      if (diffs.determinant() * col.sign < 0) q(k) = -z;
    }
    pts.col(static_cast<Eigen::Index>(n + c)) = q;
  }
  return PointCloud(std::move(pts));
}

}  // namespace isoclouds
