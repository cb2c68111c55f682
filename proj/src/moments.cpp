#include "isoclouds/moments.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

namespace isoclouds {

namespace {

// Pairwise summation keeps the error O(log k) over binom(m, n) terms.
double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

void append(std::vector<double>& out, const std::vector<double>& part) { out.insert(out.end(), part.begin(), part.end()); }

}  // namespace

std::size_t moment_length(MomentKind kind, std::size_t points, std::size_t dim) {
  const std::size_t sdv = dim * (dim - 1) / 2;
  return kind == MomentKind::Odm ? sdv + 2 * (points - dim) : sdv + 3 * (points - dim + 1);
}

std::size_t distance_coordinates(MomentKind kind, std::size_t points, std::size_t dim) {
  return moment_length(kind, points, dim) - (kind == MomentKind::Odm ? points - dim : points - dim + 1);
}

std::vector<double> sorted_distance_vector(const std::vector<Vector>& points, bool with_origin) {
  std::vector<double> pairs;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) pairs.push_back(distance(points[i], points[j]));
  std::vector<double> out = sorted(std::move(pairs));
  if (with_origin) {
    std::vector<double> radial;
    for (const Vector& p : points) radial.push_back(p.norm());
    append(out, sorted(std::move(radial)));
  }
  return out;
}

std::vector<double> average_oriented_vector(const Ord& ord) {
  if (ord.kind != InvariantKind::Osd) throw Error(ErrorKind::InvalidInput, "AOV needs an ORD");
  std::vector<double> out = sorted(ord.basis.upper());
  std::vector<double> averages, strengths;
  for (const Column& c : ord.columns) {
    double s = 0.0;
    for (double d : c.distances) s += d;
    averages.push_back(s / static_cast<double>(c.distances.size()));
    strengths.push_back(c.strength);
  }
  append(out, sorted(std::move(averages)));
  append(out, sorted(std::move(strengths)));
  return out;
}

std::vector<double> average_oriented_vector(const PointCloud& cloud, const std::vector<std::size_t>& basis,
                                            Tolerance tol) {
  return average_oriented_vector(build_ord(cloud, basis, tol));
}

std::vector<double> average_centred_vector(const Ocd& ocd) {
  if (ocd.kind != InvariantKind::Scd) throw Error(ErrorKind::InvalidInput, "ACV needs an OCD");
  const std::size_t h = ocd.basis.points();  // n - 1 basis points and the origin
  std::vector<double> pairs, radial;
  for (std::size_t i = 0; i + 1 < h; ++i) {
    for (std::size_t j = i + 1; j + 1 < h; ++j) pairs.push_back(ocd.basis.at(i, j));
    radial.push_back(ocd.basis.at(i, h - 1));
  }
  std::vector<double> out = sorted(std::move(pairs));
  append(out, sorted(std::move(radial)));

  std::vector<double> averages, origin_distances, strengths;
  for (const Column& c : ocd.columns) {
    if (h > 1) {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < h; ++i) s += c.distances[i];
      averages.push_back(s / static_cast<double>(h - 1));
    } else {
      averages.push_back(0.0);  // n = 1: no basis rows to average
    }
    origin_distances.push_back(c.distances[h - 1]);
    strengths.push_back(c.strength);
  }
  append(out, sorted(std::move(averages)));
  append(out, sorted(std::move(origin_distances)));
  append(out, sorted(std::move(strengths)));
  return out;
}

std::vector<double> average_centred_vector(const PointCloud& centred, const std::vector<std::size_t>& basis,
                                           Tolerance tol) {
  return average_centred_vector(build_ocd(centred, basis, tol));
}

std::vector<double> moment(const std::vector<std::vector<double>>& vectors, const std::vector<double>& weights,
                           unsigned order) {
  if (vectors.empty()) throw Error(ErrorKind::InvalidInput, "moment of an empty distribution");
  if (order == 0) throw Error(ErrorKind::InvalidInput, "moment order must be at least 1");
  if (weights.size() != vectors.size()) throw Error(ErrorKind::InvalidInput, "one weight per vector is required");
  const std::size_t len = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != len) throw Error(ErrorKind::DimensionMismatch, "moment vectors must have equal lengths");
  }

  const std::size_t k = vectors.size();
  std::vector<double> out(len), terms(k);
  for (std::size_t c = 0; c < len; ++c) {
    for (std::size_t i = 0; i < k; ++i) terms[i] = weights[i] * vectors[i][c];
    const double mean = pairwise_sum(terms);
    if (order == 1) {
      out[c] = mean;
      continue;
    }
    for (std::size_t i = 0; i < k; ++i) {
      const double d = vectors[i][c] - mean;
      terms[i] = weights[i] * d * d;
    }
    const double sd = std::sqrt(pairwise_sum(terms));
    if (order == 2) {
      out[c] = sd;
      continue;
    }
    if (sd == 0.0) {
      out[c] = 0.0;
      continue;
    }
    for (std::size_t i = 0; i < k; ++i) terms[i] = weights[i] * std::pow((vectors[i][c] - mean) / sd, order);
    out[c] = pairwise_sum(terms);
  }
  return out;
}

std::vector<double> moment(const std::vector<std::vector<double>>& vectors, unsigned order) {
  return moment(vectors, std::vector<double>(vectors.size(), 1.0 / static_cast<double>(vectors.size())), order);
}

MomentVector distribution_moment(const WeightedDistribution& dist, unsigned order) {
  std::vector<std::vector<double>> vectors;
  std::vector<double> weights;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    vectors.push_back(dist.kind == InvariantKind::Osd ? average_oriented_vector(dist.forms[i])
                                                      : average_centred_vector(dist.forms[i]));
    weights.push_back(dist.weight(i));
  }
  const MomentKind kind = dist.kind == InvariantKind::Osd ? MomentKind::Odm : MomentKind::Cdm;
  return {kind, order, dist.points, dist.dim, moment(vectors, weights, order)};
}

MomentVector odm(const PointCloud& cloud, unsigned order, Tolerance tol) {
  return distribution_moment(build_osd(cloud, tol), order);
}

MomentVector cdm(const PointCloud& cloud, unsigned order, const Anchor& anchor, Tolerance tol) {
  return distribution_moment(build_scd(cloud, anchor, tol), order);
}

}  // namespace isoclouds
