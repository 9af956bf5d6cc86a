/**
 * @file element.hpp
 * @brief Reference-element machinery: Gauss-Legendre rules, tensor-product
 *        Lagrange bases on [0,1]^2 and the affine cell map.
 */
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cdg/mesh.hpp"

namespace cdg {

/// One-dimensional rule on [0,1].
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
  int exactness_degree{0};

  std::size_t size() const { return points.size(); }
};

/// Tensor-product rule on [0,1]^2.
struct CellQuadrature {
  std::vector<Point2> points;
  std::vector<double> weights;
  int exactness_degree{0};

  std::size_t size() const { return points.size(); }
};

/**
 * n-point Gauss-Legendre rule mapped to [0,1], exact up to degree 2n-1.
 * Nodes come from Newton iteration on P_n started at the Chebyshev guesses.
 */
inline QuadratureRule gauss_rule_1d(int n) {
  if (n < 1 || n > 10) throw std::invalid_argument("gauss_rule_1d: point count must be in [1,10]");
  // P_n(z) and P_n'(z) by the three-term recurrence
  auto legendre = [n](double z) {
    double p0 = 1.0;
    double p1 = z;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (z * p1 - p0) / (z * z - 1.0)};
  };

  QuadratureRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  rule.exactness_degree = 2 * n - 1;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(z);
      const double dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double dp = legendre(z).second;
    const double w = 1.0 / ((1.0 - z * z) * dp * dp);  // half the [-1,1] weight
    rule.points[i] = 0.5 * (1.0 - z);
    rule.points[n - 1 - i] = 0.5 * (1.0 + z);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.5;
  return rule;
}

/// Tensor rule with n points per direction; x runs fastest.
inline CellQuadrature tensor_rule(int n) {
  const auto r = gauss_rule_1d(n);
  CellQuadrature q;
  q.exactness_degree = r.exactness_degree;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      q.points.push_back({r.points[i], r.points[j]});
      q.weights.push_back(r.weights[i] * r.weights[j]);
    }
  return q;
}

struct BasisValues {
  std::vector<double> values;
  std::vector<Vec2> gradients;  // with respect to reference coordinates
};

/**
 * Q_k Lagrange basis on [0,1]^2 with equispaced nodes. Node (a,b) has local
 * index b*(k+1)+a, i.e. lexicographic with x fastest.
 */
class ReferenceBasis {
 public:
  explicit ReferenceBasis(int degree) : degree_(degree) {
    if (degree < 1 || degree > 4) throw std::invalid_argument("ReferenceBasis: degree must be in [1,4]");
    for (int i = 0; i <= degree; ++i) nodes_1d_.push_back(static_cast<double>(i) / degree);
  }

  int degree() const { return degree_; }
  int nodes_per_direction() const { return degree_ + 1; }
  std::size_t size() const { return static_cast<std::size_t>((degree_ + 1) * (degree_ + 1)); }
  int local_index(int a, int b) const { return b * (degree_ + 1) + a; }

  Point2 node(std::size_t i) const {
    const int n = degree_ + 1;
    return {nodes_1d_[i % n], nodes_1d_[i / n]};
  }

  /// Local indices of the k+1 nodes on one side, ordered along increasing x or y.
  std::vector<int> side_nodes(Side s) const {
    std::vector<int> out;
    for (int t = 0; t <= degree_; ++t) {
      switch (s) {
        case Side::Bottom: out.push_back(local_index(t, 0)); break;
        case Side::Right: out.push_back(local_index(degree_, t)); break;
        case Side::Top: out.push_back(local_index(t, degree_)); break;
        case Side::Left: out.push_back(local_index(0, t)); break;
      }
    }
    return out;
  }

  BasisValues eval(Point2 p) const {
    const int n = degree_ + 1;
    std::vector<double> lx(n), ly(n), dlx(n), dly(n);
    for (int i = 0; i < n; ++i) {
      lx[i] = lagrange(i, p.x);
      ly[i] = lagrange(i, p.y);
      dlx[i] = lagrange_derivative(i, p.x);
      dly[i] = lagrange_derivative(i, p.y);
    }
    BasisValues out;
    out.values.resize(size());
    out.gradients.resize(size());
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) {
        const int idx = local_index(a, b);
        out.values[idx] = lx[a] * ly[b];
        out.gradients[idx] = {dlx[a] * ly[b], lx[a] * dly[b]};
      }
    return out;
  }

 private:
  double lagrange(int i, double t) const {
    double v = 1.0;
    for (int j = 0; j <= degree_; ++j)
      if (j != i) v *= (t - nodes_1d_[j]) / (nodes_1d_[i] - nodes_1d_[j]);
    return v;
  }

  double lagrange_derivative(int i, double t) const {
    double sum = 0.0;
    for (int m = 0; m <= degree_; ++m) {
      if (m == i) continue;
      double term = 1.0 / (nodes_1d_[i] - nodes_1d_[m]);
      for (int j = 0; j <= degree_; ++j)
        if (j != i && j != m) term *= (t - nodes_1d_[j]) / (nodes_1d_[i] - nodes_1d_[j]);
      sum += term;
    }
    return sum;
  }

  int degree_;
  std::vector<double> nodes_1d_;
};

/// Affine map [0,1]^2 -> axis-aligned cell. The Jacobian is diag(dx, dy).
struct CellGeometry {
  Point2 lower;
  double dx{1.0};
  double dy{1.0};

  static CellGeometry of(const ElementCell& e) { return {e.lower_corner, e.dx(), e.dy()}; }

  double determinant() const { return dx * dy; }
  Point2 to_physical(Point2 ref) const { return {lower.x + dx * ref.x, lower.y + dy * ref.y}; }
  Point2 to_reference(Point2 phys) const {
    return {(phys.x - lower.x) / dx, (phys.y - lower.y) / dy};
  }
};

/// J^{-T} applied to a reference gradient.
inline Vec2 map_gradient(const CellGeometry& geom, Vec2 ref_grad) {
  return {ref_grad.x / geom.dx, ref_grad.y / geom.dy};
}

}  // namespace cdg
