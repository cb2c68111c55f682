#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace oracles {

using isoclouds::Vector;

namespace {

template <typename Fold>
double over_bijections(const Matrix& costs, double init, Fold fold) {
  const auto k = static_cast<std::size_t>(costs.rows());
  std::vector<std::size_t> g(k);
  std::iota(g.begin(), g.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double acc = init;
    for (std::size_t i = 0; i < k; ++i) acc = fold(acc, costs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(g[i])));
    best = std::min(best, acc);
  } while (std::next_permutation(g.begin(), g.end()));
  return k == 0 ? 0.0 : best;
}

// Dense tableau simplex for min c.x, A x = b, x >= 0 with b >= 0.
class Simplex {
 public:
  Simplex(const Matrix& a, const Vector& b) : rows_(a.rows()), vars_(a.cols()) {
    t_ = Matrix::Zero(rows_ + 1, vars_ + rows_ + 1);
    t_.topLeftCorner(rows_, vars_) = a;
    t_.block(0, vars_, rows_, rows_) = Matrix::Identity(rows_, rows_);
    t_.col(t_.cols() - 1).head(rows_) = b;
    basis_.resize(static_cast<std::size_t>(rows_));
    for (Eigen::Index i = 0; i < rows_; ++i) basis_[static_cast<std::size_t>(i)] = vars_ + i;
  }

  double minimize(const Vector& c) {
    // Phase 1: minimise the sum of artificials.
    Vector phase1 = Vector::Zero(vars_ + rows_);
    phase1.tail(rows_).setOnes();
    set_objective(phase1);
    run(vars_ + rows_);
    if (-t_(rows_, t_.cols() - 1) > 1e-9) throw std::runtime_error("LP oracle: infeasible");
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < vars_) continue;
      for (Eigen::Index j = 0; j < vars_; ++j) {
        if (std::abs(t_(i, j)) > kEps) {
          pivot(i, j);
          break;
        }
      }
    }
    Vector full = Vector::Zero(vars_ + rows_);
    full.head(vars_) = c;
    set_objective(full);
    run(vars_);
    return -t_(rows_, t_.cols() - 1);
  }

 private:
  static constexpr double kEps = 1e-12;

  void set_objective(const Vector& c) {
    t_.row(rows_).setZero();
    t_.row(rows_).head(c.size()) = c.transpose();
    for (Eigen::Index i = 0; i < rows_; ++i) t_.row(rows_) -= c(basis_[static_cast<std::size_t>(i)]) * t_.row(i);
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i <= rows_; ++i) {
      if (i != r && t_(i, c) != 0.0) t_.row(i) -= t_(i, c) * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  void run(Eigen::Index allowed) {
    const Eigen::Index rhs = t_.cols() - 1;
    while (true) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed && enter < 0; ++j) {
        if (t_(rows_, j) < -kEps) enter = j;
      }
      if (enter < 0) return;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows_; ++i) {
        if (t_(i, enter) > kEps) best = std::min(best, t_(i, rhs) / t_(i, enter));
      }
      if (!std::isfinite(best)) throw std::runtime_error("LP oracle: unbounded");
      // Bland: among tied rows, the one whose basic variable has the lowest index.
      Eigen::Index leave = -1;
      for (Eigen::Index i = 0; i < rows_; ++i) {
        if (t_(i, enter) <= kEps || t_(i, rhs) / t_(i, enter) > best + kEps) continue;
        if (leave < 0 || basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]) leave = i;
      }
      pivot(leave, enter);
    }
  }

  Eigen::Index rows_, vars_;
  Matrix t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

double brute_bottleneck(const Matrix& costs) {
  return over_bijections(costs, 0.0, [](double acc, double c) { return std::max(acc, c); });
}

double brute_assignment(const Matrix& costs) {
  return over_bijections(costs, 0.0, [](double acc, double c) { return acc + c; });
}

double lp_transport(const std::vector<double>& wx, const std::vector<double>& wy, const Matrix& costs) {
  const auto k = static_cast<Eigen::Index>(wx.size()), l = static_cast<Eigen::Index>(wy.size());
  // The last column constraint is implied by the others.
  const Eigen::Index rows = k + l - 1;
  Matrix a = Matrix::Zero(rows, k * l);
  Vector b(rows), c(k * l);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < l; ++j) {
      const Eigen::Index v = i * l + j;
      c(v) = costs(i, j);
      a(i, v) = 1.0;
      if (j < l - 1) a(k + j, v) = 1.0;
    }
    b(i) = wx[static_cast<std::size_t>(i)];
  }
  for (Eigen::Index j = 0; j < l - 1; ++j) b(k + j) = wy[static_cast<std::size_t>(j)];
  return Simplex(a, b).minimize(c);
}

double heron_area_sq(double a, double b, double c) {
  const double s = (a + b + c) / 2;
  return std::max(0.0, s * (s - a) * (s - b) * (s - c));
}

double planar_normalized_strength(double a, double b, double c) {
  const double p = (a + b + c) / 2;
  return heron_area_sq(a, b, c) / (p * p * p) / (2 * std::sqrt(3.0));
}

int permutation_sign(const std::vector<std::size_t>& image) {
  std::vector<char> seen(image.size(), 0);
  int sign = 1;
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = image[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

double brute_m_inf(const isoclouds::RelativeForm& x, const isoclouds::RelativeForm& y) {
  const std::size_t h = x.basis.points();
  const std::size_t movable = x.kind == isoclouds::InvariantKind::Osd ? h : h - 1;
  const std::size_t cols = x.columns.size();
  std::vector<std::size_t> xi(h);
  std::iota(xi.begin(), xi.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    const int sign = permutation_sign(xi);
    double d = 0.0;
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = i + 1; j < h; ++j) d = std::max(d, std::abs(x.basis.at(i, j) - y.basis.at(xi[i], xi[j])));
    Matrix costs(static_cast<Eigen::Index>(cols), static_cast<Eigen::Index>(cols));
    for (std::size_t a = 0; a < cols; ++a) {
      for (std::size_t b = 0; b < cols; ++b) {
        double c = std::abs(sign * x.columns[a].strength - y.columns[b].strength);
        for (std::size_t i = 0; i < h; ++i) {
          c = std::max(c, std::abs(x.columns[a].distances[i] - y.columns[b].distances[xi[i]]));
        }
        costs(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = c;
      }
    }
    best = std::min(best, std::max(d, brute_bottleneck(costs)));
  } while (std::next_permutation(xi.begin(), xi.begin() + static_cast<std::ptrdiff_t>(movable)));
  return best;
}

}  // namespace oracles
