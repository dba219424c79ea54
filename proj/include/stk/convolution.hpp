#pragma once

#include <cstdint>

#include "stk/field.hpp"
#include "stk/kernel.hpp"

namespace stk {

enum class Boundary { Zero, Periodic };

// Tabulated two-point kernel on voxel offsets in [-r,r]^3. Entry (o,i,j) is
// k(o*spacing, n_i, 0, n_j) renormalized so every source column j has unit
// discrete mass: sum_{o,i} value(o,i,j) * w_i = 1.
struct KernelTable {
  int radius = 0;
  double spacing = 1.0;
  SphereSampling sphere;
  std::vector<double> values;  // [(2r+1)^3][target i][source j], j fastest
  double mass = 0.0;           // mean per-column discrete mass before normalization

  int side() const { return 2 * radius + 1; }
  std::int64_t offsets() const { return std::int64_t(side()) * side() * side(); }

  // ox fastest, each component in [-radius, radius]
  std::size_t offset_index(int ox, int oy, int oz) const {
    const int s = side();
    return (std::size_t(oz + radius) * s + (oy + radius)) * s + (ox + radius);
  }
  double& at(std::size_t o, int i, int j) {
    const int n = sphere.size();
    return values[(o * n + i) * n + j];
  }
  double at(std::size_t o, int i, int j) const {
    const int n = sphere.size();
    return values[(o * n + i) * n + j];
  }
};

KernelTable build_kernel_table(const DiffusionParams& p, SectionChoice s,
                               int radius, const SphereSampling& sphere,
                               double spacing);

// Smallest radius (capped at 5) keeping the discarded analytic kernel mass
// outside [-r,r]^3 below 1%.
int choose_radius(const DiffusionParams& p, SectionChoice s, double spacing);

// W(y,n_i) = sum_{y'} sum_j table(y-y', i, j) U(y', n_j) w_j.
FodField shift_twist_convolve(const KernelTable& k, const FodField& u,
                              Boundary boundary = Boundary::Zero);

FodField enhance(const FodField& u, const DiffusionParams& p, int radius,
                 SectionChoice s, Boundary boundary = Boundary::Zero);

}  // namespace stk
