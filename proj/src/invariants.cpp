#include "isoclouds/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isoclouds/combinatorics.hpp"
#include "isoclouds/parallel.hpp"

namespace isoclouds {

namespace {

// -1 / 0 / +1 with values inside the tolerance treated as equal.
int compare_values(double a, double b) {
  if (a < b - kInvariantTolerance) return -1;
  if (a > b + kInvariantTolerance) return 1;
  return 0;
}

int compare_columns(const Column& a, const Column& b) {
  const std::size_t n = std::min(a.distances.size(), b.distances.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare_values(a.distances[i], b.distances[i])) return c;
  }
  if (a.distances.size() != b.distances.size()) return a.distances.size() < b.distances.size() ? -1 : 1;
  if (a.sign != b.sign) return a.sign < b.sign ? -1 : 1;
  return 0;
}

int compare_forms(const RelativeForm& a, const RelativeForm& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.basis.points() != b.basis.points()) return a.basis.points() < b.basis.points() ? -1 : 1;
  const auto& da = a.basis.upper();
  const auto& db = b.basis.upper();
  for (std::size_t i = 0; i < da.size(); ++i) {
    if (int c = compare_values(da[i], db[i])) return c;
  }
  if (a.columns.size() != b.columns.size()) return a.columns.size() < b.columns.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.columns.size(); ++i) {
    if (int c = compare_columns(a.columns[i], b.columns[i])) return c;
  }
  return 0;
}

// Exact order on the stored values. Only used to break ties between items the
// tolerant order calls equal, so the result never depends on input order.
int exact_compare(const Column& a, const Column& b) {
  if (a.distances != b.distances)
    return std::lexicographical_compare(a.distances.begin(), a.distances.end(), b.distances.begin(), b.distances.end())
               ? -1
               : 1;
  if (a.sign != b.sign) return a.sign < b.sign ? -1 : 1;
  if (a.strength != b.strength) return a.strength < b.strength ? -1 : 1;
  return 0;
}

int exact_compare(const RelativeForm& a, const RelativeForm& b) {
  const auto& da = a.basis.upper();
  const auto& db = b.basis.upper();
  if (da != db) return std::lexicographical_compare(da.begin(), da.end(), db.begin(), db.end()) ? -1 : 1;
  for (std::size_t i = 0; i < std::min(a.columns.size(), b.columns.size()); ++i) {
    if (int c = exact_compare(a.columns[i], b.columns[i])) return c;
  }
  return 0;
}

template <typename T, typename Tolerant>
bool tie_broken_less(const T& a, const T& b, Tolerant tolerant) {
  if (int c = tolerant(a, b)) return c < 0;
  return exact_compare(a, b) < 0;
}

void sort_columns(std::vector<Column>& columns) {
  tolerant_sort(columns, [](const Column& a, const Column& b) { return tie_broken_less(a, b, compare_columns); });
}

void check_basis(const PointCloud& cloud, const std::vector<std::size_t>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i] >= cloud.size()) {
      throw Error(ErrorKind::InvalidInput, "basis index " + std::to_string(basis[i]) + " is not a point of the cloud");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (basis[i] == basis[j]) {
        throw Error(ErrorKind::InvalidInput, "basis point " + std::to_string(basis[i]) + " is repeated");
      }
    }
  }
}

// Columns for every cloud point outside `basis`, measured against
// `frame` (the basis points, plus the origin for OCDs).
std::vector<Column> relative_columns(const PointCloud& cloud, const std::vector<std::size_t>& basis,
                                     const std::vector<Vector>& frame, Tolerance tol) {
  const std::size_t n = cloud.dim();
  std::vector<bool> in_basis(cloud.size(), false);
  for (std::size_t b : basis) in_basis[b] = true;

  std::vector<Column> columns;
  columns.reserve(cloud.size() - basis.size());
  std::vector<Vector> simplex = frame;
  simplex.emplace_back(n);
  Matrix diffs(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(frame.size()));
  for (std::size_t qi = 0; qi < cloud.size(); ++qi) {
    if (in_basis[qi]) continue;
    const Vector q = cloud.point(qi);
    Column col;
    col.distances.reserve(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) {
      col.distances.push_back(distance(q, frame[i]));
      diffs.col(static_cast<Eigen::Index>(i)) = q - frame[i];
    }
    col.sign = orientation_sign(diffs, tol);
    simplex.back() = q;
    col.strength = normalized_signed_strength(SimplexDistances::from_points(simplex), col.sign);
    columns.push_back(std::move(col));
  }
  return columns;
}

}  // namespace

bool canonical_less(const RelativeForm& a, const RelativeForm& b) { return compare_forms(a, b) < 0; }

bool equivalent(const RelativeForm& a, const RelativeForm& b) {
  if (a.kind != b.kind || a.basis.points() != b.basis.points() || a.columns.size() != b.columns.size()) return false;
  for (std::size_t i = 0; i < a.basis.upper().size(); ++i) {
    if (std::abs(a.basis.upper()[i] - b.basis.upper()[i]) > kInvariantTolerance) return false;
  }
  for (std::size_t c = 0; c < a.columns.size(); ++c) {
    const Column& x = a.columns[c];
    const Column& y = b.columns[c];
    if (x.sign != y.sign || x.distances.size() != y.distances.size()) return false;
    if (std::abs(x.strength - y.strength) > kInvariantTolerance) return false;
    for (std::size_t i = 0; i < x.distances.size(); ++i) {
      if (std::abs(x.distances[i] - y.distances[i]) > kInvariantTolerance) return false;
    }
  }
  return true;
}

RelativeForm permute_basis(const RelativeForm& form, const std::vector<std::size_t>& image, int perm_sign) {
  const std::size_t h = form.basis.points();
  std::vector<std::size_t> full(h);
  for (std::size_t i = 0; i < h; ++i) full[i] = i < image.size() ? image[i] : i;

  std::vector<double> upper(form.basis.upper().size());
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = i + 1; j < h; ++j) {
      std::size_t k = full[i], l = full[j];
      if (k > l) std::swap(k, l);
      upper[k * h - k * (k + 1) / 2 + (l - k - 1)] = form.basis.at(i, j);
    }
  }

  RelativeForm out{form.kind, DistanceMatrix(h, std::move(upper)), {}};
  out.columns.reserve(form.columns.size());
  for (const Column& c : form.columns) {
    Column p;
    p.distances.resize(c.distances.size());
    for (std::size_t i = 0; i < c.distances.size(); ++i) p.distances[full[i]] = c.distances[i];
    p.sign = c.sign * perm_sign;
    p.strength = c.strength * perm_sign;
    out.columns.push_back(std::move(p));
  }
  sort_columns(out.columns);
  return out;
}

RelativeForm canonicalize(const RelativeForm& form) {
  std::optional<RelativeForm> best;
  for (const SignedPermutation& perm : signed_permutations(form.permutable())) {
    RelativeForm candidate = permute_basis(form, perm.image, perm.sign);
    if (!best || tie_broken_less(candidate, *best, compare_forms)) best = std::move(candidate);
  }
  return *best;
}

RelativeForm mirror(const RelativeForm& form) {
  RelativeForm flipped = form;
  for (Column& c : flipped.columns) {
    c.sign = -c.sign;
    c.strength = -c.strength;
  }
  return canonicalize(flipped);
}

DistanceMatrix build_distance_matrix(const std::vector<Vector>& points) { return SimplexDistances::from_points(points); }

Ord build_ord(const PointCloud& cloud, const std::vector<std::size_t>& basis, Tolerance tol) {
  const std::size_t n = cloud.dim();
  if (basis.size() != n) {
    throw Error(ErrorKind::InvalidInput, "ORD basis needs " + std::to_string(n) + " points, got " +
                                             std::to_string(basis.size()));
  }
  if (cloud.size() <= n) throw Error(ErrorKind::InvalidInput, "ORD needs more points than the dimension");
  check_basis(cloud, basis);

  std::vector<Vector> frame;
  for (std::size_t b : basis) frame.emplace_back(cloud.point(b));
  RelativeForm form{InvariantKind::Osd, build_distance_matrix(frame), relative_columns(cloud, basis, frame, tol)};
  return canonicalize(form);
}

Ocd build_ocd(const PointCloud& centred, const std::vector<std::size_t>& basis, Tolerance tol) {
  const std::size_t n = centred.dim();
  if (basis.size() + 1 != n) {
    throw Error(ErrorKind::InvalidInput, "OCD basis needs " + std::to_string(n - 1) + " points, got " +
                                             std::to_string(basis.size()));
  }
  if (centred.size() < basis.size() + 1) throw Error(ErrorKind::InvalidInput, "OCD needs at least n points");
  check_basis(centred, basis);

  std::vector<Vector> frame;
  for (std::size_t b : basis) frame.emplace_back(centred.point(b));
  frame.push_back(Vector::Zero(static_cast<Eigen::Index>(n)));
  RelativeForm form{InvariantKind::Scd, build_distance_matrix(frame), relative_columns(centred, basis, frame, tol)};
  return canonicalize(form);
}

std::vector<RelativeForm> WeightedDistribution::expanded() const {
  std::vector<RelativeForm> out;
  out.reserve(total);
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::uint64_t c = 0; c < counts[i]; ++c) out.push_back(forms[i]);
  return out;
}

WeightedDistribution collapse(InvariantKind kind, std::size_t dim, std::size_t points, std::vector<RelativeForm> forms) {
  tolerant_sort(forms, [](const RelativeForm& a, const RelativeForm& b) { return tie_broken_less(a, b, compare_forms); });
  WeightedDistribution out{kind, dim, points, {}, {}, forms.size()};
  for (RelativeForm& f : forms) {
    if (!out.forms.empty() && equivalent(out.forms.back(), f)) {
      ++out.counts.back();
    } else {
      out.forms.push_back(std::move(f));
      out.counts.push_back(1);
    }
  }
  return out;
}

WeightedDistribution build_osd(const PointCloud& cloud, Tolerance tol) {
  const std::size_t n = cloud.dim();
  if (cloud.size() <= n) {
    throw Error(ErrorKind::InvalidInput, "OSD needs m > n (m = " + std::to_string(cloud.size()) +
                                             ", n = " + std::to_string(n) + ")");
  }
  binomial(cloud.size(), n);  // overflow guard
  const auto subsets = combinations(cloud.size(), n);
  std::vector<RelativeForm> forms(subsets.size());
  parallel_for(subsets.size(), [&](std::size_t i) { forms[i] = build_ord(cloud, subsets[i], tol); });
  return collapse(InvariantKind::Osd, n, cloud.size(), std::move(forms));
}

PointCloud anchor_cloud(const PointCloud& cloud, const Anchor& anchor) {
  if (!anchor.point) return centre_cloud(cloud);
  if (*anchor.point >= cloud.size()) {
    throw Error(ErrorKind::InvalidInput, "anchor index " + std::to_string(*anchor.point) + " is out of range");
  }
  return translate_to_origin(cloud, cloud.point(*anchor.point));
}

WeightedDistribution build_scd(const PointCloud& cloud, const Anchor& anchor, Tolerance tol) {
  const std::size_t n = cloud.dim();
  const bool exclude = anchor.point && anchor.exclude_from_bases;
  const std::size_t candidates = cloud.size() - (exclude ? 1 : 0);
  if (cloud.size() < n || candidates < n - 1) {
    throw Error(ErrorKind::InvalidInput, "SCD needs m >= n (m = " + std::to_string(cloud.size()) +
                                             ", n = " + std::to_string(n) + ")");
  }
  const PointCloud centred = anchor_cloud(cloud, anchor);
  binomial(candidates, n - 1);
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (!(exclude && i == *anchor.point)) pool.push_back(i);
  }
  auto subsets = combinations(pool.size(), n - 1);
  for (auto& s : subsets)
    for (auto& i : s) i = pool[i];
  std::vector<RelativeForm> forms(subsets.size());
  parallel_for(subsets.size(), [&](std::size_t i) { forms[i] = build_ocd(centred, subsets[i], tol); });
  return collapse(InvariantKind::Scd, n, cloud.size(), std::move(forms));
}

WeightedDistribution mirror(const WeightedDistribution& dist) {
  std::vector<RelativeForm> flipped;
  flipped.reserve(dist.total);
  for (std::size_t i = 0; i < dist.forms.size(); ++i) {
    RelativeForm m = mirror(dist.forms[i]);
    for (std::uint64_t c = 0; c < dist.counts[i]; ++c) flipped.push_back(m);
  }
  return collapse(dist.kind, dist.dim, dist.points, std::move(flipped));
}

bool equivalent(const WeightedDistribution& a, const WeightedDistribution& b) {
  if (a.kind != b.kind || a.dim != b.dim || a.points != b.points || a.total != b.total) return false;
  if (a.forms.size() != b.forms.size()) return false;
  for (std::size_t i = 0; i < a.forms.size(); ++i) {
    if (a.counts[i] != b.counts[i] || !equivalent(a.forms[i], b.forms[i])) return false;
  }
  return true;
}

}  // namespace isoclouds
