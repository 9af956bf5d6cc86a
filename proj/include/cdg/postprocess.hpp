/**
 * @file postprocess.hpp
 * @brief Discrete fields, L2 / Linf differences, legacy VTK and CSV output.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdg/element.hpp"
#include "cdg/mesh.hpp"
#include "cdg/space.hpp"

namespace cdg {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coefficient vector over a DofMap. Evaluation is always element-local.
class DiscreteField {
 public:
  DiscreteField(std::shared_ptr<const Mesh> mesh, std::shared_ptr<const DofMap> dofs,
                std::vector<double> coefficients)
      : mesh_(std::move(mesh)),
        dofs_(std::move(dofs)),
        coefficients_(std::move(coefficients)),
        basis_(dofs_->degree()) {
    if (coefficients_.size() != dofs_->n_dofs())
      throw std::invalid_argument("DiscreteField: coefficient count does not match the DoF map");
  }

  const Mesh& mesh() const { return *mesh_; }
  const DofMap& dofs() const { return *dofs_; }
  int degree() const { return dofs_->degree(); }
  MethodKind method() const { return dofs_->method(); }
  const std::vector<double>& coefficients() const { return coefficients_; }

  /// Value inside element e at reference point ref.
  double value_in(std::size_t e, Point2 ref) const {
    const auto phi = basis_.eval(ref).values;
    const auto ids = dofs_->element_dofs(e);
    double s = 0.0;
    for (std::size_t i = 0; i < ids.size(); ++i) s += coefficients_[ids[i]] * phi[i];
    return s;
  }

  /// Point evaluation; on shared edges the lower-index element wins.
  double operator()(Point2 p) const {
    const auto e = mesh_->locate(p);
    if (!e) throw std::invalid_argument("DiscreteField: point outside the mesh");
    return value_in(*e, CellGeometry::of(mesh_->element(*e)).to_reference(p));
  }

 private:
  std::shared_ptr<const Mesh> mesh_;
  std::shared_ptr<const DofMap> dofs_;
  std::vector<double> coefficients_;
  ReferenceBasis basis_;
};

namespace detail {

/// Per-element sample lattice for Linf: (k+2)^2 Gauss points plus the corners.
inline std::vector<Point2> linf_lattice(int k) {
  auto pts = tensor_rule(k + 2).points;
  pts.insert(pts.end(), {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
  return pts;
}

using ElementEvaluator = std::function<double(std::size_t, Point2 ref, Point2 phys)>;

inline ElementEvaluator evaluator(const DiscreteField& f) {
  return [&f](std::size_t e, Point2 ref, Point2) { return f.value_in(e, ref); };
}
inline ElementEvaluator evaluator(const std::function<double(Point2)>& g) {
  return [&g](std::size_t, Point2, Point2 phys) { return g(phys); };
}

inline double l2_diff(const Mesh& mesh, int k, const ElementEvaluator& a, const ElementEvaluator& b) {
  const auto quad = tensor_rule(k + 2);
  double sum = 0.0;
  for (const auto& el : mesh.elements()) {
    const auto geom = CellGeometry::of(el);
    double local = 0.0;
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const Point2 x = geom.to_physical(quad.points[q]);
      const double d = a(el.id, quad.points[q], x) - b(el.id, quad.points[q], x);
      local += quad.weights[q] * d * d;
    }
    sum += local * geom.determinant();
  }
  return std::sqrt(sum);
}

inline double linf_diff(const Mesh& mesh, int k, const ElementEvaluator& a, const ElementEvaluator& b) {
  const auto lattice = linf_lattice(k);
  double worst = 0.0;
  for (const auto& el : mesh.elements()) {
    const auto geom = CellGeometry::of(el);
    for (const auto& r : lattice) {
      const Point2 x = geom.to_physical(r);
      worst = std::max(worst, std::abs(a(el.id, r, x) - b(el.id, r, x)));
    }
  }
  return worst;
}

inline void require_same_mesh(const DiscreteField& a, const DiscreteField& b) {
  if (!a.mesh().same_grid(b.mesh()))
    throw std::invalid_argument("norm difference: fields live on different meshes");
}

}  // namespace detail

inline double l2_norm_diff(const DiscreteField& a, const DiscreteField& b) {
  detail::require_same_mesh(a, b);
  return detail::l2_diff(a.mesh(), std::max(a.degree(), b.degree()), detail::evaluator(a),
                         detail::evaluator(b));
}

inline double l2_norm_diff(const DiscreteField& a, const std::function<double(Point2)>& b) {
  return detail::l2_diff(a.mesh(), a.degree(), detail::evaluator(a), detail::evaluator(b));
}

inline double linf_norm_diff(const DiscreteField& a, const DiscreteField& b) {
  detail::require_same_mesh(a, b);
  return detail::linf_diff(a.mesh(), std::max(a.degree(), b.degree()), detail::evaluator(a),
                           detail::evaluator(b));
}

inline double linf_norm_diff(const DiscreteField& a, const std::function<double(Point2)>& b) {
  return detail::linf_diff(a.mesh(), a.degree(), detail::evaluator(a), detail::evaluator(b));
}

/// max_i |c_i - u(x_i)| over all DoF support points.
inline double nodal_linf_error(const DiscreteField& a, const std::function<double(Point2)>& u) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.coefficients().size(); ++i)
    worst = std::max(worst, std::abs(a.coefficients()[i] - u(a.dofs().support_point(i))));
  return worst;
}

/// max |u_h| over the Linf lattice of the elements tagged `region`.
inline double max_abs_in_region(const DiscreteField& a, Region region) {
  const auto lattice = detail::linf_lattice(a.degree());
  double worst = 0.0;
  for (const auto& el : a.mesh().elements()) {
    if (el.region != region) continue;
    for (const auto& r : lattice) worst = std::max(worst, std::abs(a.value_in(el.id, r)));
  }
  return worst;
}

/**
 * Legacy ASCII VTK unstructured grid. Every quad gets its own four points so
 * jumps between elements survive; the field is written as point scalar "u"
 * and the region tag as cell scalar "region" (0 continuous, 1 discontinuous).
 */
inline void write_vtk(const DiscreteField& field, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("write_vtk: cannot open " + path);
  const auto& mesh = field.mesh();
  const std::size_t n_cells = mesh.elements().size();
  constexpr std::array<Point2, 4> corners{{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}};

  out.precision(17);
  out << "# vtk DataFile Version 3.0\n"
      << "advection-diffusion solution (" << to_string(field.method()) << ")\n"
      << "ASCII\n"
      << "DATASET UNSTRUCTURED_GRID\n"
      << "POINTS " << 4 * n_cells << " double\n";
  for (const auto& el : mesh.elements()) {
    const auto geom = CellGeometry::of(el);
    for (const auto& c : corners) {
      const Point2 p = geom.to_physical(c);
      out << p.x << ' ' << p.y << " 0\n";
    }
  }
  out << "CELLS " << n_cells << ' ' << 5 * n_cells << '\n';
  for (std::size_t e = 0; e < n_cells; ++e)
    out << "4 " << 4 * e << ' ' << 4 * e + 1 << ' ' << 4 * e + 2 << ' ' << 4 * e + 3 << '\n';
  out << "CELL_TYPES " << n_cells << '\n';
  for (std::size_t e = 0; e < n_cells; ++e) out << "9\n";
  out << "POINT_DATA " << 4 * n_cells << '\n' << "SCALARS u double 1\nLOOKUP_TABLE default\n";
  for (const auto& el : mesh.elements())
    for (const auto& c : corners) out << field.value_in(el.id, c) << '\n';
  out << "CELL_DATA " << n_cells << '\n' << "SCALARS region int 1\nLOOKUP_TABLE default\n";
  for (const auto& el : mesh.elements()) out << (el.region == Region::Continuous ? 0 : 1) << '\n';
  if (!out) throw IoError("write_vtk: write failed for " + path);
}

struct SweepRecord {
  double epsilon{};
  double sigma_c{};
  double sigma_d{};
  int theta{};
  std::size_t mesh_size{};  // elements per axis
  std::size_t dofs_cdg{};
  std::size_t dofs_dg{};
  double l2_diff{};
  double linf_diff{};
  double l2_err_cdg{};
  double linf_err_cdg{};
  double l2_err_dg{};
  double linf_err_dg{};
  std::string method{"cdg"};
  std::string status{"ok"};
};

inline constexpr std::array<const char*, 15> sweep_csv_columns{
    "epsilon",  "sigma_c",    "sigma_d",      "theta",     "mesh_size",
    "dofs_cdg", "dofs_dg",    "l2_diff",      "linf_diff", "l2_err_cdg",
    "linf_err_cdg", "l2_err_dg", "linf_err_dg", "method",   "status"};

namespace detail {
inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
inline std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}
}  // namespace detail

inline void write_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
  for (std::size_t i = 0; i < sweep_csv_columns.size(); ++i)
    out << (i ? "," : "") << sweep_csv_columns[i];
  out << '\n';
  using detail::format_real;
  for (const auto& r : records) {
    out << format_real(r.epsilon) << ',' << format_real(r.sigma_c) << ',' << format_real(r.sigma_d)
        << ',' << r.theta << ',' << r.mesh_size << ',' << r.dofs_cdg << ',' << r.dofs_dg << ','
        << format_real(r.l2_diff) << ',' << format_real(r.linf_diff) << ','
        << format_real(r.l2_err_cdg) << ',' << format_real(r.linf_err_cdg) << ','
        << format_real(r.l2_err_dg) << ',' << format_real(r.linf_err_dg) << ','
        << detail::csv_safe(r.method) << ',' << detail::csv_safe(r.status) << '\n';
  }
}

inline void write_csv(const std::vector<SweepRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("write_csv: cannot open " + path);
  write_csv(records, out);
  if (!out) throw IoError("write_csv: write failed for " + path);
}

/// Inverse of write_csv.
inline std::vector<SweepRecord> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("read_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("read_csv: empty file " + path);
  std::vector<SweepRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != sweep_csv_columns.size()) throw IoError("read_csv: malformed row in " + path);
    auto real = [&](std::size_t i) { return std::strtod(cells[i].c_str(), nullptr); };
    auto count = [&](std::size_t i) {
      return static_cast<std::size_t>(std::strtoull(cells[i].c_str(), nullptr, 10));
    };
    SweepRecord r;
    r.epsilon = real(0);
    r.sigma_c = real(1);
    r.sigma_d = real(2);
    r.theta = std::atoi(cells[3].c_str());
    r.mesh_size = count(4);
    r.dofs_cdg = count(5);
    r.dofs_dg = count(6);
    r.l2_diff = real(7);
    r.linf_diff = real(8);
    r.l2_err_cdg = real(9);
    r.linf_err_cdg = real(10);
    r.l2_err_dg = real(11);
    r.linf_err_dg = real(12);
    r.method = cells[13];
    r.status = cells[14];
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cdg
