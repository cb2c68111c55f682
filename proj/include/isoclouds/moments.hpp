#pragma once

#include <vector>

#include "isoclouds/invariants.hpp"

namespace isoclouds {

enum class MomentKind { Odm, Cdm };

struct MomentVector {
  MomentKind kind = MomentKind::Odm;
  unsigned order = 1;
  std::size_t points = 0;
  std::size_t dim = 0;
  std::vector<double> coords;
};

/// n(n-1)/2 + 2(m-n) for ODM, n(n-1)/2 + 3(m-n+1) for CDM.
std::size_t moment_length(MomentKind kind, std::size_t points, std::size_t dim);

/// Leading coordinates built from distances alone. The trailing strength block
/// changes sign when a representative flips, so it is not continuous.
std::size_t distance_coordinates(MomentKind kind, std::size_t points, std::size_t dim);

/// All pairwise distances of the tuple in increasing order; with_origin
/// appends the increasing distances from each point to 0.
std::vector<double> sorted_distance_vector(const std::vector<Vector>& points, bool with_origin = false);

/// AOV of one canonical ORD: SDV(A), sorted column averages, sorted signed
/// normalized strengths.
std::vector<double> average_oriented_vector(const Ord& ord);
std::vector<double> average_oriented_vector(const PointCloud& cloud, const std::vector<std::size_t>& basis,
                                            Tolerance tol = {});

/// ACV of one canonical OCD: SDV(A; 0), sorted averages over the first n - 1
/// rows, sorted distances to the origin, sorted signed normalized strengths.
std::vector<double> average_centred_vector(const Ocd& ocd);
std::vector<double> average_centred_vector(const PointCloud& centred, const std::vector<std::size_t>& basis,
                                           Tolerance tol = {});

/// Per-coordinate moment of weighted equal-length vectors: mean (l = 1),
/// population standard deviation (l = 2), standardized moment (l >= 3, 0
/// where the deviation vanishes). Sums use pairwise summation.
std::vector<double> moment(const std::vector<std::vector<double>>& vectors, const std::vector<double>& weights,
                           unsigned order);
std::vector<double> moment(const std::vector<std::vector<double>>& vectors, unsigned order);

/// Moments of the AOD/ACD of a prebuilt distribution.
MomentVector distribution_moment(const WeightedDistribution& dist, unsigned order);

MomentVector odm(const PointCloud& cloud, unsigned order, Tolerance tol = {});
MomentVector cdm(const PointCloud& cloud, unsigned order, const Anchor& anchor = Anchor::centroid(),
                 Tolerance tol = {});

}  // namespace isoclouds
