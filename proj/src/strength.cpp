#include "isoclouds/strength.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace isoclouds {

namespace {

// Clamp window for negative Cayley-Menger output, relative to p^{2n}.
constexpr double kVolumeClamp = 1e-9;

std::size_t upper_index(std::size_t h, std::size_t i, std::size_t j) {
  // Row i starts after i rows of lengths h-1, h-2, ..., h-i.
  return i * h - i * (i + 1) / 2 + (j - i - 1);
}

double factorial(std::size_t n) {
  double f = 1.0;
  for (std::size_t k = 2; k <= n; ++k) f *= static_cast<double>(k);
  return f;
}

}  // namespace

SimplexDistances::SimplexDistances(std::size_t points, std::vector<double> upper)
    : points_(points), upper_(std::move(upper)) {
  const std::size_t expected = points * (points == 0 ? 0 : points - 1) / 2;
  if (upper_.size() != expected) {
    throw Error(ErrorKind::InvalidInput, "simplex with " + std::to_string(points) + " points needs " +
                                             std::to_string(expected) + " distances, got " +
                                             std::to_string(upper_.size()));
  }
  for (double d : upper_) {
    if (!std::isfinite(d) || d < 0) throw Error(ErrorKind::InvalidInput, "distances must be finite and non-negative");
  }
}

SimplexDistances SimplexDistances::from_points(const std::vector<Vector>& points) {
  std::vector<double> upper;
  upper.reserve(points.size() * (points.size() - 1) / 2);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) upper.push_back(distance(points[i], points[j]));
  return SimplexDistances(points.size(), std::move(upper));
}

double SimplexDistances::at(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  if (i > j) std::swap(i, j);
  return upper_[upper_index(points_, i, j)];
}

std::uint64_t rencontre(unsigned k) {
  std::uint64_t r = 1;  // r_0
  for (unsigned i = 1; i <= k; ++i) {
    // r_i = i * r_{i-1} + (-1)^i
    if (r > (std::numeric_limits<std::uint64_t>::max() - 1) / i) {
      throw Error(ErrorKind::Overflow, "rencontre number r_" + std::to_string(k) + " exceeds 64 bits");
    }
    r = i * r;
    r = (i % 2 == 0) ? r + 1 : r - 1;
  }
  return r;
}

double half_sum_distances(const SimplexDistances& s) {
  if (s.points() < 2) throw Error(ErrorKind::InvalidInput, "half-sum of distances needs at least 2 points");
  double sum = 0.0;
  for (double d : s.upper()) sum += d;
  return 0.5 * sum;
}

namespace {

// Relabels the vertices so the upper triangle is lexicographically smallest.
// Float results then depend only on the distances, not on vertex order, so
// permuted or mirrored copies get bit-identical strengths. Skipped above 6
// points where (n+1)! gets expensive.
SimplexDistances relabelled(const SimplexDistances& s) {
  const std::size_t h = s.points();
  if (h < 3 || h > 6) return s;
  std::vector<std::size_t> perm(h);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> best = s.upper(), cur(best.size());
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = i + 1; j < h; ++j) cur[k++] = s.at(perm[i], perm[j]);
    if (cur < best) best.swap(cur);
  }
  return SimplexDistances(h, std::move(best));
}

// V^2 / p^{2n}, evaluated on distances divided by p to keep the bordered
// determinant near unit scale.
double normalized_volume_sq(const SimplexDistances& s, double p) {
  const std::size_t h = s.points();
  const std::size_t n = h - 1;
  const auto size = static_cast<Eigen::Index>(h + 1);
  Matrix b = Matrix::Zero(size, size);
  for (Eigen::Index i = 1; i < size; ++i) {
    b(0, i) = 1.0;
    b(i, 0) = 1.0;
  }
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = i + 1; j < h; ++j) {
      const double d = s.at(i, j) / p;
      b(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(j + 1)) = d * d;
      b(static_cast<Eigen::Index>(j + 1), static_cast<Eigen::Index>(i + 1)) = d * d;
    }
  }
  const double det = b.partialPivLu().determinant();
  const double nf = factorial(n);
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^{n-1}
  const double v2 = sign * det / (std::ldexp(1.0, static_cast<int>(n)) * nf * nf);
  if (v2 < 0) {
    if (v2 >= -kVolumeClamp) return 0.0;
    throw Error(ErrorKind::NonEmbeddable, "distances are not realizable: negative Cayley-Menger volume");
  }
  return v2;
}

}  // namespace

double cayley_menger_volume_sq(const SimplexDistances& input) {
  if (input.points() < 2) return 0.0;
  const SimplexDistances s = relabelled(input);
  const double p = half_sum_distances(s);
  if (p == 0.0) return 0.0;
  return normalized_volume_sq(s, p) * std::pow(p, 2.0 * static_cast<double>(s.points() - 1));
}

double strength(const SimplexDistances& input) {
  if (input.points() < 2) throw Error(ErrorKind::InvalidInput, "strength needs at least 2 points");
  const SimplexDistances s = relabelled(input);
  const double p = half_sum_distances(s);
  if (p == 0.0) throw Error(ErrorKind::DegenerateInput, "strength of coincident points is undefined");
  if (s.points() == 2) return 2.0 * s.at(0, 1);
  // V^2 / p^{2n-1} = p * (V^2 / p^{2n})
  return p * normalized_volume_sq(s, p);
}

double lipschitz_constant(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "Lipschitz constant needs n >= 1");
  if (n == 1) return 2.0;
  if (n == 2) return 2.0 * std::sqrt(3.0);
  // Rencontre numbers as doubles: only the magnitude matters here.
  double r_prev = 1.0;
  std::vector<double> r(n + 3);
  r[0] = 1.0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    r_prev = static_cast<double>(i) * r_prev + ((i % 2 == 0) ? 1.0 : -1.0);
    r[i] = r_prev;
  }
  const double nd = static_cast<double>(n);
  const double bracket = 4.0 * r[n] + 2.0 * r[n + 1] + nd * (2.0 * nd - 1.0) / 4.0 * r[n + 2];
  const double nf = factorial(n);
  return bracket * std::pow(2.0, nd - 0.5) * std::sqrt(nd + 1.0) / (nf * nf * std::pow(nd, 2.0 * nd - 1.5));
}

double normalized_signed_strength(const SimplexDistances& s, int sign) {
  if (sign == 0) return 0.0;
  return static_cast<double>(sign) * strength(s) / lipschitz_constant(s.points() - 1);
}

}  // namespace isoclouds
