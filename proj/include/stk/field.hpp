#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "stk/sphere.hpp"

namespace stk {

struct GridSpec {
  int nx = 1, ny = 1, nz = 1;
  double spacing = 1.0;  // isotropic, length per voxel

  void validate() const {
    if (nx < 1 || ny < 1 || nz < 1 || !(spacing > 0.0))
      throw std::invalid_argument("GridSpec: dims >= 1, spacing > 0");
  }
  std::int64_t voxels() const {
    return std::int64_t(nx) * ny * nz;
  }
};

// Scalar field on voxel grid x sphere sampling. In memory the orientation
// index is fastest so per-voxel orientation vectors are contiguous.
struct FodField {
  GridSpec grid;
  SphereSampling sphere;
  std::vector<double> values;  // size voxels * sphere.size()

  FodField() = default;
  FodField(GridSpec g, SphereSampling s)
      : grid(g), sphere(std::move(s)),
        values(std::size_t(g.voxels()) * sphere.size(), 0.0) {}

  int orientations() const { return sphere.size(); }

  std::size_t index(int x, int y, int z, int j) const {
    const int n = sphere.size();
    return ((std::size_t(z) * grid.ny + y) * grid.nx + x) * n + j;
  }
  double& at(int x, int y, int z, int j) { return values[index(x, y, z, j)]; }
  double at(int x, int y, int z, int j) const { return values[index(x, y, z, j)]; }

  // Total discrete mass: sum of values * voxel volume * quadrature weight.
  double mass() const;
};

}  // namespace stk
