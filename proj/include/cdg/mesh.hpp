/**
 * @file mesh.hpp
 * @brief Structured quadrilateral meshes with continuous/discontinuous region
 *        tags and a classified face skeleton.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cdg {

/// 2D point / vector with the handful of operations the assembly needs.
struct Vec2 {
  double x{0.0};
  double y{0.0};

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

using Point2 = Vec2;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

enum class Region { Continuous, Discontinuous };

enum class FaceKind {
  InteriorContinuous,
  InteriorDiscontinuous,
  InterfaceJ,
  BoundaryContinuous,
  BoundaryDiscontinuous
};

enum class Flow { Inflow, Outflow };

/// Local side numbering of a quadrilateral, counterclockwise from the bottom.
enum class Side { Bottom = 0, Right = 1, Top = 2, Left = 3 };

inline bool is_boundary(FaceKind k) {
  return k == FaceKind::BoundaryContinuous || k == FaceKind::BoundaryDiscontinuous;
}

/// Member of the discontinuous skeleton (InterfaceJ belongs here).
inline bool is_discontinuous_interior(FaceKind k) {
  return k == FaceKind::InteriorDiscontinuous || k == FaceKind::InterfaceJ;
}

inline const char* to_string(FaceKind k) {
  switch (k) {
    case FaceKind::InteriorContinuous: return "InteriorContinuous";
    case FaceKind::InteriorDiscontinuous: return "InteriorDiscontinuous";
    case FaceKind::InterfaceJ: return "InterfaceJ";
    case FaceKind::BoundaryContinuous: return "BoundaryContinuous";
    case FaceKind::BoundaryDiscontinuous: return "BoundaryDiscontinuous";
  }
  return "?";
}

struct ElementCell {
  std::size_t id{};
  std::array<std::size_t, 4> vertex_ids{};  // counterclockwise from lower-left
  std::array<std::size_t, 4> face_ids{};    // indexed by Side
  Region region{Region::Continuous};
  Point2 lower_corner;
  Point2 upper_corner;
  double diameter{};

  double dx() const { return upper_corner.x - lower_corner.x; }
  double dy() const { return upper_corner.y - lower_corner.y; }
  Point2 centroid() const { return 0.5 * (lower_corner + upper_corner); }
  bool contains(Point2 p) const {
    return p.x >= lower_corner.x && p.x <= upper_corner.x && p.y >= lower_corner.y &&
           p.y <= upper_corner.y;
  }
};

struct Face {
  std::size_t id{};
  std::array<std::size_t, 2> vertex_ids{};
  Point2 start;
  Point2 end;
  std::size_t plus_element{};
  std::optional<std::size_t> minus_element;
  Side plus_side{Side::Bottom};
  Vec2 normal;  // unit, pointing out of plus_element
  double length{};
  FaceKind kind{FaceKind::InteriorContinuous};
  std::optional<Flow> flow;

  bool boundary() const { return !minus_element.has_value(); }
  Point2 midpoint() const { return 0.5 * (start + end); }
  Point2 point_at(double t) const { return start + t * (end - start); }
};

/// Half-open / closed interval with per-end closedness.
struct Interval {
  double lo{0.0};
  double hi{0.0};
  bool lo_closed{true};
  bool hi_closed{false};

  bool contains(double v) const {
    const bool above = lo_closed ? v >= lo : v > lo;
    const bool below = hi_closed ? v <= hi : v < hi;
    return above && below;
  }
};

struct Rect {
  Interval x;
  Interval y;
  bool contains(Point2 p) const { return x.contains(p.x) && y.contains(p.y); }
};

/// The continuous region as a union of axis-aligned rectangles.
struct RegionSpec {
  std::vector<Rect> continuous_region;

  bool contains(Point2 p) const {
    for (const auto& r : continuous_region)
      if (r.contains(p)) return true;
    return false;
  }

  static RegionSpec none() { return {}; }
  static RegionSpec whole(Point2 lo, Point2 hi) {
    return {{Rect{{lo.x, hi.x, true, true}, {lo.y, hi.y, true, true}}}};
  }
};

class Mesh {
 public:
  Mesh() = default;

  std::pair<Point2, Point2> bounds() const { return {lower_, upper_}; }
  Point2 lower() const { return lower_; }
  Point2 upper() const { return upper_; }
  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }

  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<ElementCell>& elements() const { return elements_; }
  const std::vector<Face>& faces() const { return faces_; }
  const ElementCell& element(std::size_t i) const { return elements_.at(i); }
  const Face& face(std::size_t i) const { return faces_.at(i); }

  std::size_t element_index(std::size_t i, std::size_t j) const { return j * nx_ + i; }

  /// Element containing p; points on shared edges resolve to the lower index.
  std::optional<std::size_t> locate(Point2 p) const {
    if (p.x < lower_.x || p.x > upper_.x || p.y < lower_.y || p.y > upper_.y) return std::nullopt;
    const double hx = (upper_.x - lower_.x) / static_cast<double>(nx_);
    const double hy = (upper_.y - lower_.y) / static_cast<double>(ny_);
    auto clamp_cell = [](double t, std::size_t n) {
      if (t <= 0.0) return std::size_t{0};
      auto c = static_cast<std::size_t>(std::ceil(t)) - 1;
      return c >= n ? n - 1 : c;
    };
    return element_index(clamp_cell((p.x - lower_.x) / hx, nx_),
                         clamp_cell((p.y - lower_.y) / hy, ny_));
  }

  std::size_t count(FaceKind k) const {
    std::size_t n = 0;
    for (const auto& f : faces_) n += f.kind == k;
    return n;
  }
  std::size_t count(Region r) const {
    std::size_t n = 0;
    for (const auto& e : elements_) n += e.region == r;
    return n;
  }

  bool same_grid(const Mesh& other) const {
    return nx_ == other.nx_ && ny_ == other.ny_ && lower_ == other.lower_ &&
           upper_ == other.upper_;
  }

 private:
  friend Mesh build_structured_mesh(std::pair<Point2, Point2>, std::size_t, std::size_t);
  friend Mesh classify_regions(Mesh, const RegionSpec&);
  friend Mesh classify_boundary_flow(Mesh, const std::function<Vec2(Point2)>&);

  Point2 lower_;
  Point2 upper_;
  std::size_t nx_{0};
  std::size_t ny_{0};
  std::vector<Point2> vertices_;
  std::vector<ElementCell> elements_;
  std::vector<Face> faces_;
};

/**
 * Uniform nx-by-ny grid over the rectangle `bounds`. All elements start out
 * Continuous; faces get geometry but no flow tags.
 *
 * Face numbering: horizontal faces row by row (y = const), then vertical
 * faces. The plus element of an interior face is the one with the smaller
 * index, so normals point in +x or +y.
 */
inline Mesh build_structured_mesh(std::pair<Point2, Point2> bounds, std::size_t nx,
                                  std::size_t ny) {
  const auto [lo, hi] = bounds;
  if (nx == 0 || ny == 0) throw std::invalid_argument("build_structured_mesh: zero element count");
  if (!std::isfinite(lo.x) || !std::isfinite(lo.y) || !std::isfinite(hi.x) ||
      !std::isfinite(hi.y) || !(hi.x > lo.x) || !(hi.y > lo.y))
    throw std::invalid_argument("build_structured_mesh: degenerate bounds");

  Mesh m;
  m.lower_ = lo;
  m.upper_ = hi;
  m.nx_ = nx;
  m.ny_ = ny;

  auto coord = [](double a, double b, std::size_t i, std::size_t n) {
    // exact at both ends
    if (i == n) return b;
    return a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
  };
  auto vid = [nx](std::size_t i, std::size_t j) { return j * (nx + 1) + i; };

  m.vertices_.reserve((nx + 1) * (ny + 1));
  for (std::size_t j = 0; j <= ny; ++j)
    for (std::size_t i = 0; i <= nx; ++i)
      m.vertices_.push_back({coord(lo.x, hi.x, i, nx), coord(lo.y, hi.y, j, ny)});

  m.elements_.reserve(nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      ElementCell e;
      e.id = j * nx + i;
      e.vertex_ids = {vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)};
      e.lower_corner = m.vertices_[vid(i, j)];
      e.upper_corner = m.vertices_[vid(i + 1, j + 1)];
      e.diameter = std::hypot(e.dx(), e.dy());
      m.elements_.push_back(e);
    }
  }

  const std::size_t n_horizontal = nx * (ny + 1);
  m.faces_.reserve(n_horizontal + ny * (nx + 1));
  for (std::size_t j = 0; j <= ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      Face f;
      f.id = m.faces_.size();
      f.vertex_ids = {vid(i, j), vid(i + 1, j)};
      f.start = m.vertices_[f.vertex_ids[0]];
      f.end = m.vertices_[f.vertex_ids[1]];
      f.length = norm(f.end - f.start);
      if (j == 0) {
        f.plus_element = m.element_index(i, 0);
        f.plus_side = Side::Bottom;
        f.normal = {0.0, -1.0};
        f.kind = FaceKind::BoundaryContinuous;
      } else if (j == ny) {
        f.plus_element = m.element_index(i, ny - 1);
        f.plus_side = Side::Top;
        f.normal = {0.0, 1.0};
        f.kind = FaceKind::BoundaryContinuous;
      } else {
        f.plus_element = m.element_index(i, j - 1);
        f.minus_element = m.element_index(i, j);
        f.plus_side = Side::Top;
        f.normal = {0.0, 1.0};
        f.kind = FaceKind::InteriorContinuous;
        m.elements_[*f.minus_element].face_ids[static_cast<int>(Side::Bottom)] = f.id;
      }
      m.elements_[f.plus_element].face_ids[static_cast<int>(f.plus_side)] = f.id;
      m.faces_.push_back(f);
    }
  }
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i <= nx; ++i) {
      Face f;
      f.id = m.faces_.size();
      f.vertex_ids = {vid(i, j), vid(i, j + 1)};
      f.start = m.vertices_[f.vertex_ids[0]];
      f.end = m.vertices_[f.vertex_ids[1]];
      f.length = norm(f.end - f.start);
      if (i == 0) {
        f.plus_element = m.element_index(0, j);
        f.plus_side = Side::Left;
        f.normal = {-1.0, 0.0};
        f.kind = FaceKind::BoundaryContinuous;
      } else if (i == nx) {
        f.plus_element = m.element_index(nx - 1, j);
        f.plus_side = Side::Right;
        f.normal = {1.0, 0.0};
        f.kind = FaceKind::BoundaryContinuous;
      } else {
        f.plus_element = m.element_index(i - 1, j);
        f.minus_element = m.element_index(i, j);
        f.plus_side = Side::Right;
        f.normal = {1.0, 0.0};
        f.kind = FaceKind::InteriorContinuous;
        m.elements_[*f.minus_element].face_ids[static_cast<int>(Side::Left)] = f.id;
      }
      m.elements_[f.plus_element].face_ids[static_cast<int>(f.plus_side)] = f.id;
      m.faces_.push_back(f);
    }
  }
  return m;
}

/**
 * Tag each element Continuous iff its centroid lies in the continuous region,
 * then reclassify every face from the tags of its neighbours.
 */
inline Mesh classify_regions(Mesh mesh, const RegionSpec& spec) {
  const double tol = 1e-12 * std::max(mesh.upper_.x - mesh.lower_.x, mesh.upper_.y - mesh.lower_.y);
  for (const auto& r : spec.continuous_region) {
    if (r.x.lo < mesh.lower_.x - tol || r.x.hi > mesh.upper_.x + tol ||
        r.y.lo < mesh.lower_.y - tol || r.y.hi > mesh.upper_.y + tol || r.x.hi < r.x.lo ||
        r.y.hi < r.y.lo)
      throw std::invalid_argument("classify_regions: rectangle outside the domain bounds");
  }
  for (auto& e : mesh.elements_)
    e.region = spec.contains(e.centroid()) ? Region::Continuous : Region::Discontinuous;

  for (auto& f : mesh.faces_) {
    const bool plus_c = mesh.elements_[f.plus_element].region == Region::Continuous;
    if (f.boundary()) {
      f.kind = plus_c ? FaceKind::BoundaryContinuous : FaceKind::BoundaryDiscontinuous;
      continue;
    }
    const bool minus_c = mesh.elements_[*f.minus_element].region == Region::Continuous;
    if (plus_c != minus_c)
      f.kind = FaceKind::InterfaceJ;
    else
      f.kind = plus_c ? FaceKind::InteriorContinuous : FaceKind::InteriorDiscontinuous;
  }
  return mesh;
}

/// Boundary faces become Inflow when b.n <= 0 at the face midpoint, else Outflow.
inline Mesh classify_boundary_flow(Mesh mesh, const std::function<Vec2(Point2)>& b) {
  for (auto& f : mesh.faces_) {
    if (!f.boundary()) continue;
    f.flow = dot(b(f.midpoint()), f.normal) <= 0.0 ? Flow::Inflow : Flow::Outflow;
  }
  return mesh;
}

}  // namespace cdg
