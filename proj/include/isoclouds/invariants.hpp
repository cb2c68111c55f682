#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "isoclouds/geometry.hpp"
#include "isoclouds/strength.hpp"

namespace isoclouds {

/// Strict upper triangle of pairwise distances of an ordered point tuple.
using DistanceMatrix = SimplexDistances;

/// Component-wise tolerance for equality of invariants (collapsing, ordering).
inline constexpr double kInvariantTolerance = 1e-9;

enum class InvariantKind { Osd, Scd };

/// One column of the oriented relative distance matrix: distances from a
/// point q to the basis points, the orientation sign, and sign * sigma / c_n
/// of the simplex spanned by the basis and q.
struct Column {
  std::vector<double> distances;
  int sign = 0;
  double strength = 0.0;
};

/// [D; M] pair in canonical form. For Osd the basis has n cloud points and
/// all of them are permuted; for Scd the last basis point is the origin and
/// only the first n - 1 are permuted.
struct RelativeForm {
  InvariantKind kind = InvariantKind::Osd;
  DistanceMatrix basis;
  std::vector<Column> columns;

  std::size_t dim() const { return basis.points(); }
  std::size_t permutable() const { return kind == InvariantKind::Osd ? basis.points() : basis.points() - 1; }
};

using Ord = RelativeForm;
using Ocd = RelativeForm;

/// Tolerance-aware lexicographic order: D entries, then columns as
/// (distances, sign). Values within kInvariantTolerance count as equal.
bool canonical_less(const RelativeForm& a, const RelativeForm& b);

/// Equality used for collapsing: same shape, equal signs, and every distance
/// and strength within kInvariantTolerance.
bool equivalent(const RelativeForm& a, const RelativeForm& b);

/// Applies a permutation of the permutable basis points: basis point i goes
/// to position perm.image[i]; signs and strengths are multiplied by
/// perm.sign. Columns are re-sorted.
RelativeForm permute_basis(const RelativeForm& form, const std::vector<std::size_t>& image, int perm_sign);

/// Minimum of permute_basis over all permutations under canonical_less.
RelativeForm canonicalize(const RelativeForm& form);

/// Signs and strengths negated, then re-canonicalized.
RelativeForm mirror(const RelativeForm& form);

DistanceMatrix build_distance_matrix(const std::vector<Vector>& points);

/// ORD(C; A) for basis indices into the cloud. Requires |A| = n < m and
/// distinct indices.
Ord build_ord(const PointCloud& cloud, const std::vector<std::size_t>& basis, Tolerance tol = {});

/// OCD(C; A) for a cloud already translated so that its anchor is the
/// origin. Requires |A| = n - 1 distinct indices.
Ocd build_ocd(const PointCloud& centred, const std::vector<std::size_t>& basis, Tolerance tol = {});

/// Multiset of canonical forms with exact weights count / total.
struct WeightedDistribution {
  InvariantKind kind = InvariantKind::Osd;
  std::size_t dim = 0;
  std::size_t points = 0;
  std::vector<RelativeForm> forms;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  std::size_t size() const { return forms.size(); }
  double weight(std::size_t i) const { return static_cast<double>(counts[i]) / static_cast<double>(total); }

  /// Every form repeated by its count, in stored order.
  std::vector<RelativeForm> expanded() const;
};

/// Sorts forms canonically and merges equivalent neighbours. `total` is the
/// number of input forms.
WeightedDistribution collapse(InvariantKind kind, std::size_t dim, std::size_t points, std::vector<RelativeForm> forms);

WeightedDistribution build_osd(const PointCloud& cloud, Tolerance tol = {});

/// Origin for SCD construction: the centre of mass or a designated point.
/// With exclude_from_bases the designated point never appears in a basis
/// (it still contributes a column as the point at the origin).
struct Anchor {
  std::optional<std::size_t> point;
  bool exclude_from_bases = false;

  static Anchor centroid() { return {}; }
  static Anchor at_point(std::size_t index, bool exclude = false) { return {index, exclude}; }
};

/// The cloud translated so that the anchor is at the origin.
PointCloud anchor_cloud(const PointCloud& cloud, const Anchor& anchor);

WeightedDistribution build_scd(const PointCloud& cloud, const Anchor& anchor = Anchor::centroid(), Tolerance tol = {});

WeightedDistribution mirror(const WeightedDistribution& dist);

/// Entry-for-entry comparison of two collapsed distributions.
bool equivalent(const WeightedDistribution& a, const WeightedDistribution& b);

}  // namespace isoclouds
