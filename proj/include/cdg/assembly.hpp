/**
 * @file assembly.hpp
 * @brief Interior-penalty assembly of the advection-diffusion system for the
 *        continuous, discontinuous and mixed spaces.
 *
 * Bilinear form, summed over elements E and assembled faces e:
 *
 *   (eps grad u, grad v)_E - (u, b.grad v)_E - (div(b) u, v)_E
 *   + sigma eps/h_e [u].[v] - {eps grad u}.[v] - theta {eps grad v}.[u]
 *   + (b.n+)(v+ - v-) u_up                       interior faces
 *   + (b.n) u v                                  outflow boundary
 *
 * and right-hand side (f, v) + sigma eps/h_e g v - theta eps (grad v.n) g
 * - (b.n) v g on inflow. Faces between two conforming elements carry no
 * terms at all; boundary faces of conforming elements are handled by strong
 * constraints instead of Nitsche terms.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdg/element.hpp"
#include "cdg/linalg.hpp"
#include "cdg/mesh.hpp"
#include "cdg/problems.hpp"
#include "cdg/space.hpp"

namespace cdg {

struct DGParameters {
  double sigma_c{10.0};  // continuous skeleton, only read in superpenalty mode
  double sigma_d{10.0};
  int theta{-1};
  bool superpenalty_mode{false};

  /// sigma = 10 k^2 on both skeleton classes, nonsymmetric variant.
  static DGParameters defaults(int k) {
    const double s = 10.0 * k * k;
    return {s, s, -1, false};
  }

  void validate() const {
    if (theta < -1 || theta > 1) throw std::invalid_argument("DGParameters: theta must be -1, 0 or 1");
    if (!(sigma_c > 0.0) || !(sigma_d > 0.0) || !std::isfinite(sigma_c) || !std::isfinite(sigma_d))
      throw std::invalid_argument("DGParameters: penalties must be positive and finite");
  }

  /// Penalty on face f: sigma_c on the continuous skeleton when super-penalizing.
  double penalty(const Face& f) const {
    const bool continuous_class =
        f.kind == FaceKind::InteriorContinuous || f.kind == FaceKind::BoundaryContinuous;
    return superpenalty_mode && continuous_class ? sigma_c : sigma_d;
  }
};

struct ScalarJumpAverage {
  Vec2 jump;
  double average{};
};

struct VectorJumpAverage {
  double jump{};
  Vec2 average;
};

/// [v] = v+ n+ + v- n-, {v} = (v+ + v-)/2; one-sided on the boundary.
inline ScalarJumpAverage jump_average(double plus, std::optional<double> minus, Vec2 n_plus) {
  if (!minus) return {plus * n_plus, plus};
  return {(plus - *minus) * n_plus, 0.5 * (plus + *minus)};
}

/// [tau] = tau+.n+ + tau-.n-, {tau} = (tau+ + tau-)/2; one-sided on the boundary.
inline VectorJumpAverage jump_average(Vec2 plus, std::optional<Vec2> minus, Vec2 n_plus) {
  if (!minus) return {dot(plus, n_plus), plus};
  return {dot(plus - *minus, n_plus), 0.5 * (plus + *minus)};
}

struct AssemblyDiagnostics {
  std::size_t sign_condition_violations{0};  // quadrature points with div(b) > 0
  double max_div_b{0.0};
};

/// Triplet accumulator for a system of fixed size.
class SystemBuilder {
 public:
  explicit SystemBuilder(std::size_t n) : n_(n), rhs_(n, 0.0) {}

  std::size_t size() const { return n_; }
  void add(std::size_t r, std::size_t c, double v) { entries_.push_back({r, c, v}); }
  void add_rhs(std::size_t r, double v) { rhs_[r] += v; }
  const std::vector<Triplet>& entries() const { return entries_; }
  const std::vector<double>& rhs() const { return rhs_; }

  AssemblyDiagnostics diagnostics;

 private:
  std::size_t n_;
  std::vector<Triplet> entries_;
  std::vector<double> rhs_;
};

struct LinearSystem {
  SparseMatrix matrix;
  std::vector<double> rhs;
  AssemblyDiagnostics diagnostics;
};

namespace detail {

inline int quadrature_points(int k) { return k + 2; }

inline double checked(double v, const char* what) {
  if (!std::isfinite(v))
    throw std::domain_error(std::string("assembly: non-finite value of ") + what);
  return v;
}

inline Vec2 checked(Vec2 v, const char* what) {
  checked(v.x, what);
  checked(v.y, what);
  return v;
}

/// Basis values and physical gradients of element e at a physical point.
struct Trace {
  std::vector<double> values;
  std::vector<Vec2> gradients;
};

inline Trace trace_at(const ReferenceBasis& basis, const ElementCell& e, Point2 x) {
  const auto geom = CellGeometry::of(e);
  auto bv = basis.eval(geom.to_reference(x));
  Trace t{std::move(bv.values), std::move(bv.gradients)};
  for (auto& g : t.gradients) g = map_gradient(geom, g);
  return t;
}

}  // namespace detail

/// Volume terms and the f load, element by element.
inline void assemble_volume(const Mesh& mesh, const DofMap& dofs, const ProblemSpec& problem,
                            SystemBuilder& system) {
  const ReferenceBasis basis(dofs.degree());
  const auto quad = tensor_rule(detail::quadrature_points(dofs.degree()));
  const std::size_t m = basis.size();
  const double eps = problem.epsilon;

  std::vector<BasisValues> ref_values;
  ref_values.reserve(quad.size());
  for (const auto& q : quad.points) ref_values.push_back(basis.eval(q));

  std::vector<double> local(m * m);
  std::vector<double> local_rhs(m);
  std::vector<Vec2> grads(m);
  for (const auto& el : mesh.elements()) {
    const auto geom = CellGeometry::of(el);
    const double det = geom.determinant();
    std::fill(local.begin(), local.end(), 0.0);
    std::fill(local_rhs.begin(), local_rhs.end(), 0.0);
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const Point2 x = geom.to_physical(quad.points[q]);
      const double w = quad.weights[q] * det;
      const Vec2 bq = detail::checked(problem.b(x), "b");
      const double divb = detail::checked(problem.div_b(x), "div_b");
      const double fq = detail::checked(problem.f(x), "f");
      if (divb > 1e-14) {
        ++system.diagnostics.sign_condition_violations;
        system.diagnostics.max_div_b = std::max(system.diagnostics.max_div_b, divb);
      }
      const auto& phi = ref_values[q].values;
      for (std::size_t i = 0; i < m; ++i) grads[i] = map_gradient(geom, ref_values[q].gradients[i]);
      for (std::size_t a = 0; a < m; ++a) {  // test
        const double b_grad_v = dot(bq, grads[a]);
        for (std::size_t c = 0; c < m; ++c)  // trial
          local[a * m + c] += w * (eps * dot(grads[c], grads[a]) - b_grad_v * phi[c] -
                                   divb * phi[c] * phi[a]);
        local_rhs[a] += w * fq * phi[a];
      }
    }
    const auto ids = dofs.element_dofs(el.id);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t c = 0; c < m; ++c) system.add(ids[a], ids[c], local[a * m + c]);
      system.add_rhs(ids[a], local_rhs[a]);
    }
  }
}

/**
 * Penalty, consistency, theta-symmetrization and upwind terms on every
 * interior face whose two elements do not share DoFs. The upwind trace is
 * the plus side when b.n+ >= 0.
 */
inline void assemble_interior_faces(const Mesh& mesh, const DofMap& dofs,
                                    const ProblemSpec& problem, const DGParameters& params,
                                    SystemBuilder& system) {
  params.validate();
  const ReferenceBasis basis(dofs.degree());
  const auto rule = gauss_rule_1d(detail::quadrature_points(dofs.degree()));
  const std::size_t m = basis.size();
  const std::size_t m2 = 2 * m;
  const double eps = problem.epsilon;
  const double theta = params.theta;

  std::vector<double> local(m2 * m2);
  std::vector<double> jump(m2);      // [phi] = jump * n+
  std::vector<double> avg_flux(m2);  // {eps grad phi}.n+
  std::vector<double> upwind(m2);
  for (const auto& f : mesh.faces()) {
    if (f.boundary() || !dofs.face_assembled(f)) continue;
    const auto& plus = mesh.element(f.plus_element);
    const auto& minus = mesh.element(*f.minus_element);
    const double pen = params.penalty(f) * eps / f.length;
    const Vec2 n = f.normal;
    std::fill(local.begin(), local.end(), 0.0);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point2 x = f.point_at(rule.points[q]);
      const double w = rule.weights[q] * f.length;
      const auto tp = detail::trace_at(basis, plus, x);
      const auto tm = detail::trace_at(basis, minus, x);
      const double bn = dot(detail::checked(problem.b(x), "b"), n);
      const bool plus_upwind = bn >= 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        jump[i] = tp.values[i];
        jump[m + i] = -tm.values[i];
        avg_flux[i] = 0.5 * eps * dot(tp.gradients[i], n);
        avg_flux[m + i] = 0.5 * eps * dot(tm.gradients[i], n);
        upwind[i] = plus_upwind ? tp.values[i] : 0.0;
        upwind[m + i] = plus_upwind ? 0.0 : tm.values[i];
      }
      for (std::size_t a = 0; a < m2; ++a)    // test
        for (std::size_t c = 0; c < m2; ++c)  // trial
          local[a * m2 + c] += w * (pen * jump[c] * jump[a] - avg_flux[c] * jump[a] -
                                    theta * avg_flux[a] * jump[c] + bn * jump[a] * upwind[c]);
    }
    const auto ip = dofs.element_dofs(plus.id);
    const auto im = dofs.element_dofs(minus.id);
    auto gid = [&](std::size_t a) { return a < m ? ip[a] : im[a - m]; };
    for (std::size_t a = 0; a < m2; ++a)
      for (std::size_t c = 0; c < m2; ++c) system.add(gid(a), gid(c), local[a * m2 + c]);
  }
}

/**
 * Nitsche and upwind boundary terms on boundary faces of non-conforming
 * elements. Requires flow tags from classify_boundary_flow.
 */
inline void assemble_boundary_faces(const Mesh& mesh, const DofMap& dofs,
                                    const ProblemSpec& problem, const DGParameters& params,
                                    SystemBuilder& system) {
  params.validate();
  const ReferenceBasis basis(dofs.degree());
  const auto rule = gauss_rule_1d(detail::quadrature_points(dofs.degree()));
  const std::size_t m = basis.size();
  const double eps = problem.epsilon;
  const double theta = params.theta;

  std::vector<double> local(m * m);
  std::vector<double> local_rhs(m);
  for (const auto& f : mesh.faces()) {
    if (!f.boundary() || !dofs.face_assembled(f)) continue;
    if (!f.flow) throw std::invalid_argument("assemble_boundary_faces: boundary face without flow tag");
    const auto& el = mesh.element(f.plus_element);
    const double pen = params.penalty(f) * eps / f.length;
    const Vec2 n = f.normal;
    const bool outflow = *f.flow == Flow::Outflow;
    std::fill(local.begin(), local.end(), 0.0);
    std::fill(local_rhs.begin(), local_rhs.end(), 0.0);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point2 x = f.point_at(rule.points[q]);
      const double w = rule.weights[q] * f.length;
      const auto t = detail::trace_at(basis, el, x);
      const double bn = dot(detail::checked(problem.b(x), "b"), n);
      const double gq = detail::checked(problem.g(x), "g");
      for (std::size_t a = 0; a < m; ++a) {
        const double va = t.values[a];
        const double dva = eps * dot(t.gradients[a], n);
        for (std::size_t c = 0; c < m; ++c) {
          const double uc = t.values[c];
          const double duc = eps * dot(t.gradients[c], n);
          double v = pen * uc * va - duc * va - theta * dva * uc;
          if (outflow) v += bn * uc * va;
          local[a * m + c] += w * v;
        }
        double r = pen * va * gq - theta * dva * gq;
        if (!outflow) r -= bn * va * gq;
        local_rhs[a] += w * r;
      }
    }
    const auto ids = dofs.element_dofs(el.id);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t c = 0; c < m; ++c) system.add(ids[a], ids[c], local[a * m + c]);
      system.add_rhs(ids[a], local_rhs[a]);
    }
  }
}

/**
 * Symmetric elimination of constrained DoFs: their columns move to the
 * right-hand side and their rows become identity rows with the prescribed
 * value. Structure is kept; eliminated entries are stored as zeros.
 */
inline void eliminate_constraints(SparseMatrix& a, std::vector<double>& rhs, const DofMap& dofs) {
  const auto& cons = dofs.constraints();
  if (cons.empty()) return;
  std::vector<char> fixed(a.size(), 0);
  std::vector<double> value(a.size(), 0.0);
  for (const auto& [d, v] : cons) {
    fixed[d] = 1;
    value[d] = v;
  }
  for (std::size_t r = 0; r < a.size(); ++r) {
    const auto cols = a.row_columns(r);
    auto vals = a.row_values(r);
    if (fixed[r]) {
      for (std::size_t p = 0; p < cols.size(); ++p) vals[p] = cols[p] == r ? 1.0 : 0.0;
      rhs[r] = value[r];
      continue;
    }
    for (std::size_t p = 0; p < cols.size(); ++p) {
      if (!fixed[cols[p]]) continue;
      rhs[r] -= vals[p] * value[cols[p]];
      vals[p] = 0.0;
    }
  }
  // an identity row needs a diagonal slot; the volume pass always creates one
  for (const auto& [d, v] : cons)
    if (a.at(d, d) != 1.0) throw std::logic_error("eliminate_constraints: missing diagonal entry");
}

/// B(u,v) = L(v) on the space described by `dofs`, constraints eliminated.
inline LinearSystem assemble_system(const Mesh& mesh, const DofMap& dofs, const ProblemSpec& problem,
                                    const DGParameters& params) {
  SystemBuilder builder(dofs.n_dofs());
  assemble_volume(mesh, dofs, problem, builder);
  assemble_interior_faces(mesh, dofs, problem, params, builder);
  assemble_boundary_faces(mesh, dofs, problem, params, builder);
  LinearSystem sys;
  sys.matrix = from_triplets(builder.size(), builder.entries());
  sys.rhs = builder.rhs();
  sys.diagnostics = builder.diagnostics;
  eliminate_constraints(sys.matrix, sys.rhs, dofs);
  return sys;
}

}  // namespace cdg
