#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "stk/se3.hpp"

namespace stk {

// Sphere sampling from icosahedral subdivision: unit points, spherical
// Voronoi quadrature weights (summing to 4*pi) and the triangle mesh.
struct SphereSampling {
  int level = -1;                                // subdivision level, -1 if unknown
  std::vector<Vec3> points;
  std::vector<double> weights;                   // steradians
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> antipodal_map;                // empty until antipodalize()

  int size() const { return static_cast<int>(points.size()); }
  bool has_antipodal_map() const { return !antipodal_map.empty(); }
};

// 10*4^level + 2 vertices; level 1 gives the 42-orientation sampling.
// Throws std::invalid_argument for level > 5.
SphereSampling icosphere(int level);

// Populates antipodal_map; throws std::runtime_error if some point has no
// antipode within 1e-9 angular tolerance.
SphereSampling antipodalize(SphereSampling s);

// Index of the sampled point closest to n.
int nearest_index(const SphereSampling& s, const Vec3& n);

// Text table: index n_x n_y n_z weight.
std::string sphere_table(const SphereSampling& s);

}  // namespace stk
