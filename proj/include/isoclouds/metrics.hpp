#pragma once

#include <span>
#include <vector>

#include "isoclouds/invariants.hpp"

namespace isoclouds {

enum class Aggregation { Lac, Emd };
enum class Equivalence { Rigid, Isometry };

/// max |a_i - b_i|; throws DimensionMismatch on different lengths.
double linf(std::span<const double> a, std::span<const double> b);
double linf(const Matrix& a, const Matrix& b);

/// W_inf between two sets of k unlabelled points given as columns of d x k
/// matrices, with the max-norm ||p - q||_inf as the ground cost.
double bottleneck(const Matrix& a, const Matrix& b);

/// M_inf: minimum over permutations of the permutable basis points of
/// max(L_inf on the distance matrices, W_inf on the columns seen as points
/// (distances..., sign * sigma / c_n)). Works for both ORDs and OCDs.
double m_inf(const RelativeForm& x, const RelativeForm& y);

/// (1/k) * minimum-cost perfect assignment on a k x k cost matrix.
double lac(const Matrix& costs);

/// Earth Mover's Distance for real weights summing to 1 (within 1e-12).
double emd(const std::vector<double>& wx, const std::vector<double>& wy, const Matrix& costs);

/// Earth Mover's Distance for exact weights counts / total, solved on the
/// integer grid of the common denominator.
double emd(const std::vector<std::uint64_t>& counts_x, std::uint64_t total_x,
           const std::vector<std::uint64_t>& counts_y, std::uint64_t total_y, const Matrix& costs);

/// Cost matrix of m_inf between the forms of two lists.
Matrix m_inf_costs(const std::vector<RelativeForm>& xs, const std::vector<RelativeForm>& ys);

/// LAC over the uncollapsed form lists or EMD over the collapsed weights.
/// Isometry mode takes the smaller value against y and its mirror image.
double distribution_distance(const WeightedDistribution& x, const WeightedDistribution& y, Aggregation method,
                             Equivalence mode);

/// Distances between clouds via their OSDs. Throws Incomparable for
/// different m or n.
double osd_distance(const PointCloud& a, const PointCloud& b, Aggregation method, Equivalence mode,
                    Tolerance tol = {});

double scd_distance(const PointCloud& a, const PointCloud& b, Aggregation method, Equivalence mode,
                    const Anchor& anchor = Anchor::centroid(), Tolerance tol = {});

}  // namespace isoclouds
