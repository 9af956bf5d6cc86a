#include <gtest/gtest.h>

#include <cmath>

#include "cdg/element.hpp"

using namespace cdg;

TEST(GaussRule, Midpoint) {
  const auto q = gauss_rule_1d(1);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_DOUBLE_EQ(q.points[0], 0.5);
  EXPECT_DOUBLE_EQ(q.weights[0], 1.0);
}

TEST(GaussRule, TwoPoint) {
  const auto q = gauss_rule_1d(2);
  ASSERT_EQ(q.size(), 2u);
  const double s = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(q.points[0], 0.5 * (1.0 - s), 1e-15);
  EXPECT_NEAR(q.points[1], 0.5 * (1.0 + s), 1e-15);
  EXPECT_NEAR(q.weights[0], 0.5, 1e-15);
  EXPECT_NEAR(q.weights[1], 0.5, 1e-15);
}

TEST(GaussRule, CubicOnTwoPoints) {
  const auto q = gauss_rule_1d(2);
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * std::pow(q.points[i], 3);
  EXPECT_NEAR(s, 0.25, 1e-15);
}

TEST(GaussRule, MonomialExactness) {
  for (int n = 1; n <= 10; ++n) {
    const auto q = gauss_rule_1d(n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double s = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * std::pow(q.points[i], p);
      EXPECT_NEAR(s, 1.0 / (p + 1), 1e-13) << "n=" << n << " p=" << p;
    }
  }
}

TEST(GaussRule, FailsBeyondExactnessDegree) {
  const auto q = gauss_rule_1d(2);
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * std::pow(q.points[i], 4);
  EXPECT_GT(std::abs(s - 0.2), 1e-4);
}

TEST(GaussRule, RejectsUnsupportedCounts) {
  EXPECT_THROW(gauss_rule_1d(0), std::invalid_argument);
  EXPECT_THROW(gauss_rule_1d(11), std::invalid_argument);
}

TEST(TensorRule, BivariateMonomials) {
  for (int n = 1; n <= 5; ++n) {
    const auto q = tensor_rule(n);
    EXPECT_EQ(q.size(), static_cast<std::size_t>(n * n));
    for (int a = 0; a <= 2 * n - 1; ++a)
      for (int b = 0; b <= 2 * n - 1; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i)
          s += q.weights[i] * std::pow(q.points[i].x, a) * std::pow(q.points[i].y, b);
        EXPECT_NEAR(s, 1.0 / ((a + 1) * (b + 1)), 1e-13);
      }
  }
}

TEST(ReferenceBasis, KroneckerAtNodes) {
  for (int k = 1; k <= 4; ++k) {
    const ReferenceBasis basis(k);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto v = basis.eval(basis.node(i)).values;
      for (std::size_t j = 0; j < basis.size(); ++j) EXPECT_NEAR(v[j], i == j ? 1.0 : 0.0, 1e-13);
    }
  }
}

TEST(ReferenceBasis, OriginIsFirstNode) {
  const ReferenceBasis basis(1);
  const auto v = basis.eval({0.0, 0.0}).values;
  EXPECT_EQ(v, (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
}

TEST(ReferenceBasis, CenterValues) {
  const ReferenceBasis basis(1);
  for (double v : basis.eval({0.5, 0.5}).values) EXPECT_DOUBLE_EQ(v, 0.25);
}

TEST(ReferenceBasis, PartitionOfUnity) {
  for (int k = 1; k <= 4; ++k) {
    const ReferenceBasis basis(k);
    for (Point2 p : {Point2{0.1, 0.7}, Point2{0.33, 0.0}, Point2{0.9, 0.45}}) {
      const auto bv = basis.eval(p);
      double s = 0.0;
      Vec2 g{0.0, 0.0};
      for (std::size_t i = 0; i < basis.size(); ++i) {
        s += bv.values[i];
        g = g + bv.gradients[i];
      }
      EXPECT_NEAR(s, 1.0, 1e-13);
      EXPECT_NEAR(g.x, 0.0, 1e-12);
      EXPECT_NEAR(g.y, 0.0, 1e-12);
    }
  }
}

TEST(ReferenceBasis, GradientsMatchFiniteDifferences) {
  const ReferenceBasis basis(3);
  const Point2 p{0.37, 0.61};
  const double h = 1e-6;
  const auto c = basis.eval(p);
  const auto e = basis.eval({p.x + h, p.y});
  const auto w = basis.eval({p.x - h, p.y});
  const auto n = basis.eval({p.x, p.y + h});
  const auto s = basis.eval({p.x, p.y - h});
  for (std::size_t i = 0; i < basis.size(); ++i) {
    EXPECT_NEAR(c.gradients[i].x, (e.values[i] - w.values[i]) / (2 * h), 1e-7);
    EXPECT_NEAR(c.gradients[i].y, (n.values[i] - s.values[i]) / (2 * h), 1e-7);
  }
}

TEST(ReferenceBasis, InterpolatesItsOwnSpaceExactly) {
  // x^2 y^2 + xy lies in Q_2
  const ReferenceBasis basis(2);
  auto u = [](Point2 p) { return p.x * p.x * p.y * p.y + p.x * p.y; };
  for (Point2 p : {Point2{0.2, 0.3}, Point2{0.77, 0.11}}) {
    const auto v = basis.eval(p).values;
    double s = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) s += u(basis.node(i)) * v[i];
    EXPECT_NEAR(s, u(p), 1e-14);
  }
}

TEST(ReferenceBasis, SideNodesLieOnTheirSide) {
  const ReferenceBasis basis(3);
  for (auto s : {Side::Bottom, Side::Right, Side::Top, Side::Left}) {
    const auto ids = basis.side_nodes(s);
    EXPECT_EQ(ids.size(), 4u);
    for (int i : ids) {
      const auto p = basis.node(static_cast<std::size_t>(i));
      switch (s) {
        case Side::Bottom: EXPECT_EQ(p.y, 0.0); break;
        case Side::Right: EXPECT_EQ(p.x, 1.0); break;
        case Side::Top: EXPECT_EQ(p.y, 1.0); break;
        case Side::Left: EXPECT_EQ(p.x, 0.0); break;
      }
    }
  }
}

TEST(ReferenceBasis, RejectsUnsupportedDegree) {
  EXPECT_THROW(ReferenceBasis(0), std::invalid_argument);
  EXPECT_THROW(ReferenceBasis(5), std::invalid_argument);
}

TEST(CellGeometry, GradientMapping) {
  EXPECT_EQ(map_gradient({{0, 0}, 1.0, 1.0}, {0.3, -2.0}).x, 0.3);
  EXPECT_EQ(map_gradient({{0, 0}, 1.0, 1.0}, {0.3, -2.0}).y, -2.0);
  const auto g = map_gradient({{0, 0}, 0.5, 0.25}, {1.0, 1.0});
  EXPECT_DOUBLE_EQ(g.x, 2.0);
  EXPECT_DOUBLE_EQ(g.y, 4.0);
}

TEST(CellGeometry, RoundTrip) {
  const CellGeometry geom{{-0.5, 2.0}, 0.125, 0.5};
  const Point2 r{0.3, 0.8};
  const auto back = geom.to_reference(geom.to_physical(r));
  EXPECT_NEAR(back.x, r.x, 1e-15);
  EXPECT_NEAR(back.y, r.y, 1e-15);
  EXPECT_DOUBLE_EQ(geom.determinant(), 0.0625);
}
