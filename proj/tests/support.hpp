// Small fixtures shared by the unit tests.
#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "cdg/cdg.hpp"

namespace cdg::testing {

inline std::shared_ptr<const Mesh> unit_mesh(std::size_t nx, std::size_t ny,
                                             const RegionSpec& region,
                                             std::pair<Point2, Point2> bounds = {{0, 0}, {1, 1}},
                                             Vec2 b = {1.0, 1.0}) {
  auto m = classify_regions(build_structured_mesh(bounds, nx, ny), region);
  m = classify_boundary_flow(std::move(m), [b](Point2) { return b; });
  return std::make_shared<const Mesh>(std::move(m));
}

inline RegionSpec example1_region() { return default_region(ExampleKind::Example1); }

/// Pure diffusion with constant coefficients, u = g on the boundary.
inline ProblemSpec diffusion_problem(double eps, ScalarField f, ScalarField g) {
  ProblemSpec p;
  p.name = "diffusion";
  p.epsilon = eps;
  p.b = [](Point2) { return Vec2{0.0, 0.0}; };
  p.div_b = [](Point2) { return 0.0; };
  p.f = std::move(f);
  p.g = std::move(g);
  return p;
}

inline std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("cdg_test_" + name)).string();
}

}  // namespace cdg::testing
