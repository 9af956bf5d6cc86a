/**
 * @file space.hpp
 * @brief Global degree-of-freedom numbering for the continuous, discontinuous
 *        and mixed continuous-discontinuous spaces on a tagged mesh.
 *
 * The mixed space shares nodal DoFs between elements of the continuous region
 * and keeps element-private DoFs on the discontinuous region. Nodes on the
 * interface are never identified across it, so the discrete field may jump
 * there.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cdg/element.hpp"
#include "cdg/mesh.hpp"

namespace cdg {

enum class MethodKind { CG, DG, CDG };

inline const char* to_string(MethodKind m) {
  switch (m) {
    case MethodKind::CG: return "cg";
    case MethodKind::DG: return "dg";
    case MethodKind::CDG: return "cdg";
  }
  return "?";
}

enum class DofClass { SharedContinuous, PrivateDiscontinuous };

class DofMap {
 public:
  int degree() const { return degree_; }
  MethodKind method() const { return method_; }
  std::size_t n_dofs() const { return dof_class_.size(); }
  std::size_t dofs_per_element() const { return per_element_; }

  std::span<const std::size_t> element_dofs(std::size_t e) const {
    return {element_dofs_.data() + e * per_element_, per_element_};
  }
  /// Whether element e is treated with shared (conforming) DoFs.
  bool element_continuous(std::size_t e) const { return element_continuous_[e] != 0; }

  DofClass dof_class(std::size_t i) const { return dof_class_[i]; }
  Point2 support_point(std::size_t i) const { return support_[i]; }
  const std::map<std::size_t, double>& constraints() const { return constraints_; }
  bool is_constrained(std::size_t i) const { return constraints_.contains(i); }

  /// Face terms are assembled on every face not interior to the conforming part.
  bool face_assembled(const Face& f) const {
    if (f.boundary()) return !element_continuous(f.plus_element);
    return !(element_continuous(f.plus_element) && element_continuous(*f.minus_element));
  }

 private:
  friend DofMap build_dof_map(const Mesh&, int, MethodKind);
  friend DofMap apply_dirichlet_constraints(DofMap, const Mesh&,
                                            const std::function<double(Point2)>&);

  int degree_{1};
  MethodKind method_{MethodKind::CG};
  std::size_t per_element_{0};
  std::vector<std::size_t> element_dofs_;
  std::vector<char> element_continuous_;
  std::vector<DofClass> dof_class_;
  std::vector<Point2> support_;
  std::map<std::size_t, double> constraints_;
};

/**
 * Numbering: shared DoFs first, lexicographic over the global node lattice
 * (x fastest), then private DoFs element by element in local node order.
 * Method CG ignores region tags and treats every element as continuous; DG
 * treats every element as discontinuous.
 */
inline DofMap build_dof_map(const Mesh& mesh, int k, MethodKind method) {
  if (k < 1) throw std::invalid_argument("build_dof_map: degree must be >= 1");
  const ReferenceBasis basis(k);
  const std::size_t n_el = mesh.elements().size();
  const std::size_t per = basis.size();
  const std::size_t lattice_nx = k * mesh.nx() + 1;
  const std::size_t lattice_ny = k * mesh.ny() + 1;
  constexpr auto unset = std::numeric_limits<std::size_t>::max();

  DofMap map;
  map.degree_ = k;
  map.method_ = method;
  map.per_element_ = per;
  map.element_dofs_.assign(n_el * per, unset);
  map.element_continuous_.resize(n_el);
  for (std::size_t e = 0; e < n_el; ++e) {
    bool c = false;
    switch (method) {
      case MethodKind::CG: c = true; break;
      case MethodKind::DG: c = false; break;
      case MethodKind::CDG: c = mesh.element(e).region == Region::Continuous; break;
    }
    map.element_continuous_[e] = c;
  }

  auto lattice_index = [&](std::size_t e, int local) {
    const std::size_t i = e % mesh.nx();
    const std::size_t j = e / mesh.nx();
    const int a = local % (k + 1);
    const int b = local / (k + 1);
    return (k * j + b) * lattice_nx + (k * i + a);
  };
  auto physical_node = [&](std::size_t e, int local) {
    return CellGeometry::of(mesh.element(e)).to_physical(basis.node(local));
  };

  std::vector<std::size_t> lattice_dof(lattice_nx * lattice_ny, unset);
  std::vector<Point2> lattice_point(lattice_nx * lattice_ny);
  for (std::size_t e = 0; e < n_el; ++e) {
    if (!map.element_continuous(e)) continue;
    for (std::size_t l = 0; l < per; ++l) {
      const auto li = lattice_index(e, static_cast<int>(l));
      lattice_dof[li] = 0;
      lattice_point[li] = physical_node(e, static_cast<int>(l));
    }
  }
  for (std::size_t li = 0; li < lattice_dof.size(); ++li) {
    if (lattice_dof[li] == unset) continue;
    lattice_dof[li] = map.dof_class_.size();
    map.dof_class_.push_back(DofClass::SharedContinuous);
    map.support_.push_back(lattice_point[li]);
  }
  for (std::size_t e = 0; e < n_el; ++e) {
    for (std::size_t l = 0; l < per; ++l) {
      auto& slot = map.element_dofs_[e * per + l];
      if (map.element_continuous(e)) {
        slot = lattice_dof[lattice_index(e, static_cast<int>(l))];
      } else {
        slot = map.dof_class_.size();
        map.dof_class_.push_back(DofClass::PrivateDiscontinuous);
        map.support_.push_back(physical_node(e, static_cast<int>(l)));
      }
    }
  }
  return map;
}

/**
 * Constrain every shared DoF on a boundary face of a conforming element to
 * the nodal value of g. For method DG the constrained set stays empty.
 */
inline DofMap apply_dirichlet_constraints(DofMap dofs, const Mesh& mesh,
                                          const std::function<double(Point2)>& g) {
  dofs.constraints_.clear();
  if (dofs.method() == MethodKind::DG) return dofs;
  const ReferenceBasis basis(dofs.degree());
  for (const auto& f : mesh.faces()) {
    if (!f.boundary() || !dofs.element_continuous(f.plus_element)) continue;
    const auto el = dofs.element_dofs(f.plus_element);
    for (int local : basis.side_nodes(f.plus_side)) {
      const std::size_t d = el[local];
      if (!dofs.constraints_.contains(d)) dofs.constraints_.emplace(d, g(dofs.support_point(d)));
    }
  }
  return dofs;
}

/**
 * Structural couplings: all pairs within each element, plus all pairs between
 * the two elements of every face that carries face terms. Sorted (row, col).
 */
inline std::vector<std::pair<std::size_t, std::size_t>> sparsity_pattern(const DofMap& dofs,
                                                                         const Mesh& mesh) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t e = 0; e < mesh.elements().size(); ++e) {
    const auto el = dofs.element_dofs(e);
    for (auto r : el)
      for (auto c : el) pairs.emplace_back(r, c);
  }
  for (const auto& f : mesh.faces()) {
    if (f.boundary() || !dofs.face_assembled(f)) continue;
    const auto p = dofs.element_dofs(f.plus_element);
    const auto m = dofs.element_dofs(*f.minus_element);
    for (auto r : p)
      for (auto c : m) {
        pairs.emplace_back(r, c);
        pairs.emplace_back(c, r);
      }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace cdg
