#include "isoclouds/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "isoclouds/assignment.hpp"
#include "isoclouds/combinatorics.hpp"
#include "isoclouds/parallel.hpp"
#include "isoclouds/transport.hpp"

namespace isoclouds {

double linf(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "L_inf between vectors of different lengths");
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

double linf(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "L_inf between matrices of different shapes");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

namespace {

Matrix pairwise_max_norm(const Matrix& a, const Matrix& b) {
  Matrix costs(a.cols(), b.cols());
  for (Eigen::Index i = 0; i < a.cols(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) costs(i, j) = (a.col(i) - b.col(j)).cwiseAbs().maxCoeff();
  return costs;
}

// Columns of a form as points (distances..., strength) in R^{n+1}, with the
// distance rows reordered by `image` and strengths scaled by `sign`.
Matrix column_points(const RelativeForm& form, const std::vector<std::size_t>& image, int sign) {
  const std::size_t rows = form.dim() + 1;
  Matrix pts(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(form.columns.size()));
  for (std::size_t c = 0; c < form.columns.size(); ++c) {
    const Column& col = form.columns[c];
    for (std::size_t i = 0; i < col.distances.size(); ++i) {
      const std::size_t target = i < image.size() ? image[i] : i;
      pts(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(c)) = col.distances[i];
    }
    pts(static_cast<Eigen::Index>(rows - 1), static_cast<Eigen::Index>(c)) = sign * col.strength;
  }
  return pts;
}

void check_comparable(const RelativeForm& x, const RelativeForm& y) {
  if (x.kind != y.kind || x.dim() != y.dim() || x.columns.size() != y.columns.size()) {
    throw Error(ErrorKind::Incomparable, "forms differ in kind, dimension or column count");
  }
}

void check_comparable(const WeightedDistribution& x, const WeightedDistribution& y) {
  if (x.kind != y.kind) throw Error(ErrorKind::Incomparable, "cannot compare OSD with SCD");
  if (x.dim != y.dim || x.points != y.points) {
    throw Error(ErrorKind::Incomparable, "clouds differ in point count or dimension (m = " + std::to_string(x.points) +
                                             " vs " + std::to_string(y.points) + ", n = " + std::to_string(x.dim) +
                                             " vs " + std::to_string(y.dim) + ")");
  }
}

}  // namespace

double bottleneck(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::InvalidInput, "bottleneck needs equal point counts");
  if (a.cols() > 0 && a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "bottleneck needs equal dimensions");
  return bottleneck_assignment(pairwise_max_norm(a, b));
}

double m_inf(const RelativeForm& x, const RelativeForm& y) {
  check_comparable(x, y);
  const std::size_t h = x.basis.points();
  const Matrix y_points = column_points(y, {}, 1);
  double best = std::numeric_limits<double>::infinity();
  for (const SignedPermutation& perm : signed_permutations(x.permutable())) {
    std::vector<std::size_t> full(h);
    for (std::size_t i = 0; i < h; ++i) full[i] = i < perm.image.size() ? perm.image[i] : i;
    double d = 0.0;
    for (std::size_t i = 0; i < h; ++i) {
      for (std::size_t j = i + 1; j < h; ++j) d = std::max(d, std::abs(x.basis.at(i, j) - y.basis.at(full[i], full[j])));
    }
    if (d >= best) continue;
    d = std::max(d, bottleneck(column_points(x, full, perm.sign), y_points));
    best = std::min(best, d);
  }
  return best;
}

double lac(const Matrix& costs) {
  if (costs.rows() != costs.cols()) throw Error(ErrorKind::InvalidInput, "LAC needs a square cost matrix");
  if (costs.rows() == 0) return 0.0;
  return solve_assignment(costs).cost / static_cast<double>(costs.rows());
}

double emd(const std::vector<double>& wx, const std::vector<double>& wy, const Matrix& costs) {
  const double sx = std::accumulate(wx.begin(), wx.end(), 0.0);
  const double sy = std::accumulate(wy.begin(), wy.end(), 0.0);
  if (std::abs(sx - 1.0) > 1e-12 || std::abs(sy - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidInput, "EMD weights must sum to 1");
  }
  return min_cost_transport(wx, wy, costs).cost;
}

double emd(const std::vector<std::uint64_t>& counts_x, std::uint64_t total_x,
           const std::vector<std::uint64_t>& counts_y, std::uint64_t total_y, const Matrix& costs) {
  if (total_x == 0 || total_y == 0) throw Error(ErrorKind::InvalidInput, "EMD weights need a positive total");
  if (std::accumulate(counts_x.begin(), counts_x.end(), std::uint64_t{0}) != total_x ||
      std::accumulate(counts_y.begin(), counts_y.end(), std::uint64_t{0}) != total_y) {
    throw Error(ErrorKind::InvalidInput, "EMD counts do not add up to their totals");
  }
  const std::uint64_t g = std::gcd(total_x, total_y);
  const std::uint64_t scale_x = total_y / g, scale_y = total_x / g;
  if (total_x > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) / scale_x) {
    throw Error(ErrorKind::Overflow, "common denominator of EMD weights overflows");
  }
  const auto denominator = static_cast<std::int64_t>(total_x * scale_x);
  std::vector<std::int64_t> supply, demand;
  for (auto c : counts_x) supply.push_back(static_cast<std::int64_t>(c * scale_x));
  for (auto c : counts_y) demand.push_back(static_cast<std::int64_t>(c * scale_y));
  return min_cost_transport(supply, demand, costs).cost / static_cast<double>(denominator);
}

Matrix m_inf_costs(const std::vector<RelativeForm>& xs, const std::vector<RelativeForm>& ys) {
  Matrix costs(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(ys.size()));
  const std::size_t cells = xs.size() * ys.size();
  parallel_for(cells, [&](std::size_t cell) {
    const std::size_t i = cell / ys.size(), j = cell % ys.size();
    costs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m_inf(xs[i], ys[j]);
  });
  return costs;
}

namespace {

double aggregate(const WeightedDistribution& x, const WeightedDistribution& y, Aggregation method) {
  const Matrix costs = m_inf_costs(x.forms, y.forms);
  if (method == Aggregation::Emd) return emd(x.counts, x.total, y.counts, y.total, costs);

  if (x.total != y.total) throw Error(ErrorKind::Incomparable, "LAC needs equally many forms on both sides");
  // Expand collapsed entries back to the full k x k matrix.
  std::vector<Eigen::Index> xi, yi;
  for (std::size_t i = 0; i < x.size(); ++i) xi.insert(xi.end(), x.counts[i], static_cast<Eigen::Index>(i));
  for (std::size_t j = 0; j < y.size(); ++j) yi.insert(yi.end(), y.counts[j], static_cast<Eigen::Index>(j));
  Matrix full(static_cast<Eigen::Index>(xi.size()), static_cast<Eigen::Index>(yi.size()));
  for (std::size_t r = 0; r < xi.size(); ++r)
    for (std::size_t c = 0; c < yi.size(); ++c)
      full(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = costs(xi[r], yi[c]);
  return lac(full);
}

}  // namespace

double distribution_distance(const WeightedDistribution& x, const WeightedDistribution& y, Aggregation method,
                             Equivalence mode) {
  check_comparable(x, y);
  const double direct = aggregate(x, y, method);
  if (mode == Equivalence::Rigid || direct == 0.0) return direct;
  return std::min(direct, aggregate(x, mirror(y), method));
}

namespace {

void check_clouds(const PointCloud& a, const PointCloud& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) {
    throw Error(ErrorKind::Incomparable, "clouds differ in point count or dimension (m = " + std::to_string(a.size()) +
                                             " vs " + std::to_string(b.size()) + ", n = " + std::to_string(a.dim()) +
                                             " vs " + std::to_string(b.dim()) + ")");
  }
}

}  // namespace

double osd_distance(const PointCloud& a, const PointCloud& b, Aggregation method, Equivalence mode, Tolerance tol) {
  check_clouds(a, b);
  return distribution_distance(build_osd(a, tol), build_osd(b, tol), method, mode);
}

double scd_distance(const PointCloud& a, const PointCloud& b, Aggregation method, Equivalence mode,
                    const Anchor& anchor, Tolerance tol) {
  check_clouds(a, b);
  return distribution_distance(build_scd(a, anchor, tol), build_scd(b, anchor, tol), method, mode);
}

}  // namespace isoclouds
