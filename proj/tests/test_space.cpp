#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace cdg;
using cdg::testing::example1_region;
using cdg::testing::unit_mesh;

namespace {

// Couplings found by assembling every contribution into a dense matrix of
// absolute values and listing its nonzeros.
std::set<std::pair<std::size_t, std::size_t>> dense_couplings(const Mesh& mesh, const DofMap& dofs) {
  ProblemSpec p = manufactured_linear(1.0);
  p.b = [](Point2) { return Vec2{1.0, 0.5}; };
  SystemBuilder sb(dofs.n_dofs());
  assemble_volume(mesh, dofs, p, sb);
  assemble_interior_faces(mesh, dofs, p, DGParameters::defaults(dofs.degree()), sb);
  assemble_boundary_faces(mesh, dofs, p, DGParameters::defaults(dofs.degree()), sb);
  const std::size_t n = dofs.n_dofs();
  std::vector<double> dense(n * n, 0.0);
  for (const auto& t : sb.entries()) dense[t.row * n + t.col] += std::abs(t.value);
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (dense[r * n + c] > 0.0) out.emplace(r, c);
  return out;
}

}  // namespace

TEST(DofMap, CountsOnTheBoundaryLayerConfiguration) {
  const auto m = unit_mesh(32, 32, example1_region());
  EXPECT_EQ(build_dof_map(*m, 1, MethodKind::DG).n_dofs(), 4096u);
  EXPECT_EQ(build_dof_map(*m, 1, MethodKind::CG).n_dofs(), 1089u);
  EXPECT_EQ(build_dof_map(*m, 1, MethodKind::CDG).n_dofs(), 1276u);
}

TEST(DofMap, HigherDegreeCounts) {
  const auto m = unit_mesh(4, 3, RegionSpec::none());
  EXPECT_EQ(build_dof_map(*m, 2, MethodKind::CG).n_dofs(), 9u * 7u);
  EXPECT_EQ(build_dof_map(*m, 3, MethodKind::DG).n_dofs(), 12u * 16u);
}

TEST(DofMap, SharedDofsComeFirst) {
  const auto m = unit_mesh(8, 8, example1_region());
  const auto d = build_dof_map(*m, 1, MethodKind::CDG);
  bool seen_private = false;
  for (std::size_t i = 0; i < d.n_dofs(); ++i) {
    if (d.dof_class(i) == DofClass::PrivateDiscontinuous) seen_private = true;
    else EXPECT_FALSE(seen_private) << "shared DoF " << i << " after a private one";
  }
}

TEST(DofMap, ContinuousNumberingIsLexicographic) {
  const auto m = unit_mesh(3, 2, RegionSpec::none());
  const auto d = build_dof_map(*m, 1, MethodKind::CG);
  for (std::size_t i = 0; i < d.n_dofs(); ++i) {
    const auto p = d.support_point(i);
    EXPECT_DOUBLE_EQ(p.x, static_cast<double>(i % 4) / 3.0);
    EXPECT_DOUBLE_EQ(p.y, static_cast<double>(i / 4) / 2.0);
  }
}

TEST(DofMap, InterfaceNodesAreNotShared) {
  const auto m = unit_mesh(8, 8, example1_region());
  const auto d = build_dof_map(*m, 1, MethodKind::CDG);
  for (const auto& f : m->faces()) {
    if (f.kind != FaceKind::InterfaceJ) continue;
    std::set<std::size_t> plus(d.element_dofs(f.plus_element).begin(),
                               d.element_dofs(f.plus_element).end());
    for (auto id : d.element_dofs(*f.minus_element)) EXPECT_FALSE(plus.contains(id));
  }
}

TEST(DofMap, SupportPointsMatchElementNodes) {
  const auto m = unit_mesh(5, 4, example1_region());
  const auto d = build_dof_map(*m, 2, MethodKind::CDG);
  const ReferenceBasis basis(2);
  for (const auto& el : m->elements()) {
    const auto ids = d.element_dofs(el.id);
    for (std::size_t l = 0; l < ids.size(); ++l) {
      const auto p = CellGeometry::of(el).to_physical(basis.node(l));
      EXPECT_NEAR(d.support_point(ids[l]).x, p.x, 1e-15);
      EXPECT_NEAR(d.support_point(ids[l]).y, p.y, 1e-15);
    }
  }
}

TEST(DofMap, LimitEquivalence) {
  const auto all = unit_mesh(6, 6, RegionSpec::whole({0, 0}, {1, 1}));
  const auto none = unit_mesh(6, 6, RegionSpec::none());
  const auto cdg_all = build_dof_map(*all, 2, MethodKind::CDG);
  const auto cg = build_dof_map(*all, 2, MethodKind::CG);
  const auto cdg_none = build_dof_map(*none, 2, MethodKind::CDG);
  const auto dg = build_dof_map(*none, 2, MethodKind::DG);
  ASSERT_EQ(cdg_all.n_dofs(), cg.n_dofs());
  ASSERT_EQ(cdg_none.n_dofs(), dg.n_dofs());
  for (std::size_t e = 0; e < all->elements().size(); ++e) {
    const auto a = cdg_all.element_dofs(e);
    const auto b = cg.element_dofs(e);
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
    const auto c = cdg_none.element_dofs(e);
    const auto dd = dg.element_dofs(e);
    EXPECT_TRUE(std::equal(c.begin(), c.end(), dd.begin()));
  }
}

TEST(DofMap, GrowingTheContinuousRegionNeverAddsDofs) {
  std::size_t previous = std::numeric_limits<std::size_t>::max();
  for (double edge : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    RegionSpec r{{Rect{{0.0, edge, true, true}, {0.0, 1.0, true, true}}}};
    const auto m = unit_mesh(8, 8, r);
    const auto n = build_dof_map(*m, 1, MethodKind::CDG).n_dofs();
    EXPECT_LE(n, previous);
    previous = n;
  }
}

TEST(DirichletConstraints, EmptyForDg) {
  const auto m = unit_mesh(4, 4, RegionSpec::none());
  const auto d = apply_dirichlet_constraints(build_dof_map(*m, 1, MethodKind::DG), *m,
                                             [](Point2) { return 1.0; });
  EXPECT_TRUE(d.constraints().empty());
}

TEST(DirichletConstraints, CgTwoByTwo) {
  const auto m = unit_mesh(2, 2, RegionSpec::none());
  const auto d = apply_dirichlet_constraints(build_dof_map(*m, 1, MethodKind::CG), *m,
                                             [](Point2) { return 0.0; });
  EXPECT_EQ(d.n_dofs(), 9u);
  EXPECT_EQ(d.constraints().size(), 8u);
  EXPECT_FALSE(d.is_constrained(4));
  for (const auto& [id, v] : d.constraints()) EXPECT_EQ(v, 0.0);
}

TEST(DirichletConstraints, BoundaryLayerConfiguration) {
  const auto m = unit_mesh(32, 32, example1_region());
  const auto g = [](Point2 p) { return p.x + 2.0 * p.y; };
  const auto d = apply_dirichlet_constraints(build_dof_map(*m, 1, MethodKind::CDG), *m, g);
  EXPECT_EQ(d.constraints().size(), 63u);
  for (const auto& [id, v] : d.constraints()) {
    const auto p = d.support_point(id);
    EXPECT_EQ(d.dof_class(id), DofClass::SharedContinuous);
    EXPECT_TRUE(p.x == 0.0 || p.y == 0.0);
    EXPECT_DOUBLE_EQ(v, g(p));
  }
}

TEST(SparsityPattern, SingleDgCellIsDense) {
  const auto m = unit_mesh(1, 1, RegionSpec::none());
  EXPECT_EQ(sparsity_pattern(build_dof_map(*m, 1, MethodKind::DG), *m).size(), 16u);
}

TEST(SparsityPattern, TwoCellCgAgreesWithDenseAssembly) {
  const auto m = unit_mesh(2, 1, RegionSpec::none());
  const auto d = build_dof_map(*m, 1, MethodKind::CG);
  EXPECT_EQ(d.n_dofs(), 6u);
  const auto pattern = sparsity_pattern(d, *m);
  const auto oracle = dense_couplings(*m, d);
  EXPECT_EQ(std::set(pattern.begin(), pattern.end()), oracle);
  EXPECT_EQ(pattern.size(), 28u);
}

// Face blocks are taken whole, so for dG the pattern may hold a few
// structural zeros (nodes on the far sides of both cells never meet).
TEST(SparsityPattern, CoversEveryAssembledCoupling) {
  const auto m = unit_mesh(4, 3, RegionSpec{{Rect{{0.0, 0.5, true, false}, {0.0, 1.0, true, true}}}});
  for (auto method : {MethodKind::CG, MethodKind::DG, MethodKind::CDG}) {
    const auto d = build_dof_map(*m, 1, method);
    const auto pattern = sparsity_pattern(d, *m);
    const std::set<std::pair<std::size_t, std::size_t>> have(pattern.begin(), pattern.end());
    const auto oracle = dense_couplings(*m, d);
    for (const auto& rc : oracle) EXPECT_TRUE(have.contains(rc)) << to_string(method);
    if (method == MethodKind::CG) {
      EXPECT_EQ(have, oracle);
    }
  }
}

TEST(SparsityPattern, CdgIsSmallerThanDg) {
  const auto m = unit_mesh(32, 32, example1_region());
  const auto cdg = sparsity_pattern(build_dof_map(*m, 1, MethodKind::CDG), *m);
  const auto dg = sparsity_pattern(build_dof_map(*m, 1, MethodKind::DG), *m);
  EXPECT_LT(cdg.size(), dg.size());
}

TEST(SparsityPattern, SortedAndUnique) {
  const auto m = unit_mesh(5, 5, example1_region());
  const auto p = sparsity_pattern(build_dof_map(*m, 2, MethodKind::CDG), *m);
  for (std::size_t i = 1; i < p.size(); ++i) EXPECT_LT(p[i - 1], p[i]);
}

TEST(DofMap, FaceAssembledRule) {
  const auto m = unit_mesh(8, 8, example1_region());
  const auto d = build_dof_map(*m, 1, MethodKind::CDG);
  for (const auto& f : m->faces()) {
    const bool expected = f.kind == FaceKind::InteriorDiscontinuous || f.kind == FaceKind::InterfaceJ ||
                          f.kind == FaceKind::BoundaryDiscontinuous;
    EXPECT_EQ(d.face_assembled(f), expected) << to_string(f.kind);
  }
}
