/**
 * @file problems.hpp
 * @brief Coefficient bundles for -eps*Lap(u) + b.grad(u) = f, u = g on the
 *        boundary, with exact solutions for the boundary-layer and
 *        interior-layer benchmarks and a linear consistency case.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "cdg/mesh.hpp"

namespace cdg {

using ScalarField = std::function<double(Point2)>;
using VectorField = std::function<Vec2(Point2)>;

struct ProblemSpec {
  std::string name;
  double epsilon{1.0};
  VectorField b;
  ScalarField div_b;
  ScalarField f;
  ScalarField g;
  std::optional<ScalarField> exact_u;
  std::optional<VectorField> exact_grad_u;
  Point2 lower{0.0, 0.0};
  Point2 upper{1.0, 1.0};

  std::pair<Point2, Point2> bounds() const { return {lower, upper}; }
};

namespace detail {
inline void require_positive_epsilon(double eps, const char* who) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw std::invalid_argument(std::string(who) + ": epsilon must be positive and finite");
}
}  // namespace detail

/**
 * Boundary-layer benchmark on (0,1)^2 with b = (1,1):
 *
 *   u = x + y(1-x) + (e^{-1/eps} - e^{-(1-x)(1-y)/eps}) / (1 - e^{-1/eps})
 *
 * Layers sit along x = 1 and y = 1. The layer fraction is written with expm1
 * so that it cancels exactly on the outflow sides and stays finite as
 * e^{-1/eps} underflows.
 */
inline ProblemSpec example1(double epsilon) {
  detail::require_positive_epsilon(epsilon, "example1");
  const double eps = epsilon;
  const double em1 = std::expm1(-1.0 / eps);  // e^{-1/eps} - 1, in [-1, 0)
  const double denom = -em1;                  // 1 - e^{-1/eps}

  ProblemSpec p;
  p.name = "example1";
  p.epsilon = eps;
  p.lower = {0.0, 0.0};
  p.upper = {1.0, 1.0};
  p.b = [](Point2) { return Vec2{1.0, 1.0}; };
  p.div_b = [](Point2) { return 0.0; };

  auto u = [eps, em1, denom](Point2 q) {
    const double s = (1.0 - q.x) * (1.0 - q.y);
    return q.x + q.y * (1.0 - q.x) + (em1 - std::expm1(-s / eps)) / denom;
  };
  p.exact_u = u;
  p.g = u;
  // E/(eps*D) with E = e^{-(1-x)(1-y)/eps}
  auto layer = [eps, denom](Point2 q) {
    return std::exp(-(1.0 - q.x) * (1.0 - q.y) / eps) / (eps * denom);
  };
  p.exact_grad_u = [layer](Point2 q) {
    const double l = layer(q);
    return Vec2{(1.0 - q.y) * (1.0 - l), (1.0 - q.x) * (1.0 - l)};
  };
  p.f = [layer](Point2 q) {
    const double ax = 1.0 - q.x;
    const double ay = 1.0 - q.y;
    return (ax + ay) + layer(q) * (ax * ax + ay * ay - (ax + ay));
  };
  return p;
}

/**
 * Interior-layer benchmark on (-1,1)^2 with b = (-x, y):
 *
 *   u = (1 - y^2) erf(x / sqrt(2 eps)),   f = 2 (eps - y^2) erf(x / sqrt(2 eps)).
 *
 * The layer terms of -eps*Lap(u) and b.grad(u) cancel, leaving a smooth f.
 */
inline ProblemSpec example2(double epsilon) {
  detail::require_positive_epsilon(epsilon, "example2");
  const double eps = epsilon;
  const double scale = 1.0 / std::sqrt(2.0 * eps);

  ProblemSpec p;
  p.name = "example2";
  p.epsilon = eps;
  p.lower = {-1.0, -1.0};
  p.upper = {1.0, 1.0};
  p.b = [](Point2 q) { return Vec2{-q.x, q.y}; };
  p.div_b = [](Point2) { return 0.0; };
  auto u = [scale](Point2 q) { return (1.0 - q.y * q.y) * std::erf(scale * q.x); };
  p.exact_u = u;
  p.g = u;
  p.exact_grad_u = [scale](Point2 q) {
    const double z = scale * q.x;
    const double dz = 2.0 / std::sqrt(std::numbers::pi) * std::exp(-z * z) * scale;
    return Vec2{(1.0 - q.y * q.y) * dz, -2.0 * q.y * std::erf(z)};
  };
  p.f = [eps, scale](Point2 q) { return 2.0 * (eps - q.y * q.y) * std::erf(scale * q.x); };
  return p;
}

/// u = 1 + 2x + 3y on (0,1)^2, b = (1,1); reproduced exactly by Q_1.
inline ProblemSpec manufactured_linear(double epsilon = 1.0) {
  detail::require_positive_epsilon(epsilon, "manufactured_linear");
  ProblemSpec p;
  p.name = "manufactured_linear";
  p.epsilon = epsilon;
  p.lower = {0.0, 0.0};
  p.upper = {1.0, 1.0};
  p.b = [](Point2) { return Vec2{1.0, 1.0}; };
  p.div_b = [](Point2) { return 0.0; };
  auto u = [](Point2 q) { return 1.0 + 2.0 * q.x + 3.0 * q.y; };
  p.exact_u = u;
  p.g = u;
  p.exact_grad_u = [](Point2) { return Vec2{2.0, 3.0}; };
  p.f = [](Point2) { return 5.0; };
  return p;
}

/**
 * Max over random interior samples of |(-eps Lap_h u + b.grad_h u) - f| / (1 + |f|)
 * using central differences with spacing `step`. Samples keep a margin of
 * `step` from the boundary.
 */
inline double verify_forcing(const ProblemSpec& spec, std::size_t samples, double step,
                             unsigned seed = 12345u) {
  if (!spec.exact_u) throw std::invalid_argument("verify_forcing: problem has no exact solution");
  const auto& u = *spec.exact_u;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(spec.lower.x + step, spec.upper.x - step);
  std::uniform_real_distribution<double> uy(spec.lower.y + step, spec.upper.y - step);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Point2 q{ux(rng), uy(rng)};
    const double c = u(q);
    const double e = u({q.x + step, q.y});
    const double w = u({q.x - step, q.y});
    const double n = u({q.x, q.y + step});
    const double so = u({q.x, q.y - step});
    const double lap = (e + w + n + so - 4.0 * c) / (step * step);
    const Vec2 grad{(e - w) / (2.0 * step), (n - so) / (2.0 * step)};
    const double lhs = -spec.epsilon * lap + dot(spec.b(q), grad);
    const double fq = spec.f(q);
    worst = std::max(worst, std::abs(lhs - fq) / (1.0 + std::abs(fq)));
  }
  return worst;
}

}  // namespace cdg
