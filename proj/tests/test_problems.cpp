#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cdg/problems.hpp"

using namespace cdg;

namespace {

// Maclaurin series of erf, fine for |z| <= 3.
double erf_series(double z) {
  double term = z;
  double sum = z;
  for (int n = 1; n < 200; ++n) {
    term *= -z * z / n;
    sum += term / (2 * n + 1);
  }
  return 2.0 / std::sqrt(std::numbers::pi) * sum;
}

}  // namespace

TEST(BoundaryLayerProblem, VanishesOnOutflowSides) {
  for (double eps : {1.0, 1e-2, 1e-6}) {
    const auto p = example1(eps);
    for (double t : {0.0, 0.3, 0.77, 1.0}) {
      EXPECT_NEAR((*p.exact_u)({1.0, t}), 0.0, 1e-14) << eps;
      EXPECT_NEAR((*p.exact_u)({t, 1.0}), 0.0, 1e-14) << eps;
    }
  }
}

TEST(BoundaryLayerProblem, SmoothPartAwayFromLayer) {
  const auto p = example1(1e-6);
  EXPECT_NEAR((*p.exact_u)({0.5, 0.5}), 0.75, 1e-14);
}

TEST(BoundaryLayerProblem, StableForTinyAndUnitEpsilon) {
  for (double eps = 1.0; eps >= 1e-8; eps /= 10.0) {
    const auto p = example1(eps);
    for (Point2 q : {Point2{0.0, 0.0}, Point2{0.999, 0.5}, Point2{0.9999999, 0.9999999}}) {
      EXPECT_TRUE(std::isfinite((*p.exact_u)(q)));
      EXPECT_TRUE(std::isfinite(p.f(q)));
      const auto g = (*p.exact_grad_u)(q);
      EXPECT_TRUE(std::isfinite(g.x) && std::isfinite(g.y));
    }
  }
}

TEST(BoundaryLayerProblem, LayerStaysInsideTheOuterBand) {
  const auto p = example1(1e-6);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 31.0 / 32.0);
  for (int s = 0; s < 2000; ++s) {
    const Point2 q{u(rng), u(rng)};
    EXPECT_LE(std::abs((*p.exact_u)(q) - (q.x + q.y * (1.0 - q.x))), 1e-8);
  }
}

TEST(InteriorLayerProblem, ErfMatchesSeries) {
  EXPECT_NEAR(std::erf(1.0), 0.8427007929497149, 1e-16);
  for (double z : {-2.5, -0.3, 0.0, 0.1, 1.0, 2.0}) EXPECT_NEAR(std::erf(z), erf_series(z), 1e-14);
}

TEST(InteriorLayerProblem, ExactSolutionShape) {
  const auto p = example2(0.5);
  EXPECT_NEAR((*p.exact_u)({1.0, 0.0}), 0.8427007929497149, 1e-15);
  EXPECT_EQ((*p.exact_u)({0.0, 0.4}), 0.0);
  EXPECT_EQ((*p.exact_u)({0.3, 1.0}), 0.0);
  EXPECT_EQ(p.b({0.25, -0.5}), (Vec2{-0.25, -0.5}));
}

TEST(InteriorLayerProblem, BoundedByOne) {
  const auto p = example2(1e-8);
  for (double x = -1.0; x <= 1.0; x += 0.01)
    for (double y = -1.0; y <= 1.0; y += 0.1) EXPECT_LE(std::abs((*p.exact_u)({x, y})), 1.0);
}

TEST(Forcing, LinearCase) {
  EXPECT_LE(verify_forcing(manufactured_linear(1.0), 50, 1e-3), 1e-9);
  EXPECT_LE(verify_forcing(manufactured_linear(1e-3), 50, 1e-2), 1e-9);
}

TEST(Forcing, BoundaryLayer) { EXPECT_LE(verify_forcing(example1(1e-2), 200, 1e-5), 1e-5); }

TEST(Forcing, InteriorLayer) { EXPECT_LE(verify_forcing(example2(1e-2), 200, 1e-5), 1e-5); }

TEST(Forcing, DetectsAWrongRightHandSide) {
  auto p = example2(1e-2);
  p.f = [](Point2) { return 0.0; };
  EXPECT_GT(verify_forcing(p, 200, 1e-5), 1e-2);
}

TEST(Forcing, GradientMatchesDifferences) {
  for (const auto& p : {example1(0.05), example2(0.05)}) {
    const double h = 1e-6;
    for (Point2 q : {Point2{0.2, 0.3}, Point2{0.61, 0.9}}) {
      const auto g = (*p.exact_grad_u)(q);
      const auto& u = *p.exact_u;
      EXPECT_NEAR(g.x, (u({q.x + h, q.y}) - u({q.x - h, q.y})) / (2 * h), 1e-6);
      EXPECT_NEAR(g.y, (u({q.x, q.y + h}) - u({q.x, q.y - h})) / (2 * h), 1e-6);
    }
  }
}

TEST(Problems, RejectNonpositiveEpsilon) {
  EXPECT_THROW(example1(0.0), std::invalid_argument);
  EXPECT_THROW(example2(-1.0), std::invalid_argument);
  EXPECT_THROW(manufactured_linear(std::nan("")), std::invalid_argument);
}

TEST(Problems, SignCondition) {
  for (const auto& p : {example1(1e-3), example2(1e-3), manufactured_linear()})
    EXPECT_LE(p.div_b({0.1, 0.2}), 0.0);
}
