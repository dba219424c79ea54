#include "stk/convolution.hpp"

#include <cmath>
#include <stdexcept>

#include "stk/parallel.hpp"
#include "stk/simd.hpp"

namespace stk {

namespace {

void check_same_sphere(const SphereSampling& a, const SphereSampling& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("sphere sampling mismatch");
  for (int i = 0; i < a.size(); ++i)
    if ((a.points[i] - b.points[i]).norm() > 1e-12)
      throw std::invalid_argument("sphere sampling mismatch");
}

}  // namespace

KernelTable build_kernel_table(const DiffusionParams& p, SectionChoice s,
                               int radius, const SphereSampling& sphere,
                               double spacing) {
  p.validate();
  if (radius < 1) throw std::invalid_argument("kernel table radius must be >= 1");

  KernelTable k;
  k.radius = radius;
  k.spacing = spacing;
  k.sphere = sphere;
  const int n = sphere.size();
  k.values.assign(std::size_t(k.offsets()) * n * n, 0.0);

  const Vec3 zero = Vec3::Zero();
  const int side = k.side();
  parallel_for(k.offsets(), [&](std::int64_t b, std::int64_t e) {
    for (std::int64_t o = b; o < e; ++o) {
      const int oz = int(o / (side * side)) - radius;
      const int oy = int((o / side) % side) - radius;
      const int ox = int(o % side) - radius;
      const Vec3 y = spacing * Vec3(ox, oy, oz);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          k.at(o, i, j) =
              kernel_two_point(y, sphere.points[i], zero, sphere.points[j], p, s);
    }
  });

  // Per-source-column renormalization to unit discrete mass.
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::int64_t o = 0; o < k.offsets(); ++o)
      for (int i = 0; i < n; ++i) col += k.at(o, i, j) * sphere.weights[i];
    total += col;
    const double inv = 1.0 / col;
    for (std::int64_t o = 0; o < k.offsets(); ++o)
      for (int i = 0; i < n; ++i) k.at(o, i, j) *= inv;
  }
  k.mass = total / n;
  return k;
}

int choose_radius(const DiffusionParams& p, SectionChoice s, double spacing) {
  constexpr int cap = 5;
  const SphereSampling probe = icosphere(1);
  const Vec3 ez(0.0, 0.0, 1.0);
  const Vec3 zero = Vec3::Zero();

  // Cumulative discrete mass per cube [-r,r]^3, probed two shells past the cap.
  const int rmax = cap + 2;
  std::vector<double> cum(rmax + 1, 0.0);
  for (int oz = -rmax; oz <= rmax; ++oz)
    for (int oy = -rmax; oy <= rmax; ++oy)
      for (int ox = -rmax; ox <= rmax; ++ox) {
        const int shell = std::max({std::abs(ox), std::abs(oy), std::abs(oz)});
        const Vec3 y = spacing * Vec3(ox, oy, oz);
        double m = 0.0;
        for (int i = 0; i < probe.size(); ++i)
          m += kernel_two_point(y, probe.points[i], zero, ez, p, s) *
               probe.weights[i];
        cum[shell] += m;
      }
  for (int r = 1; r <= rmax; ++r) cum[r] += cum[r - 1];

  for (int r = 1; r <= cap; ++r)
    if ((cum[rmax] - cum[r]) / cum[rmax] < 0.01) return r;
  return cap;
}

FodField shift_twist_convolve(const KernelTable& k, const FodField& u,
                              Boundary boundary) {
  check_same_sphere(k.sphere, u.sphere);
  if (std::abs(k.spacing - u.grid.spacing) > 1e-12)
    throw std::invalid_argument("kernel table spacing does not match the grid");

  const int n = u.orientations();
  const int nx = u.grid.nx, ny = u.grid.ny, nz = u.grid.nz;
  const int r = k.radius;

  // Fold the quadrature weights into the input once.
  std::vector<double> uw(u.values.size());
  for (std::size_t v = 0; v < u.values.size(); ++v)
    uw[v] = u.values[v] * u.sphere.weights[v % n];

  FodField w(u.grid, u.sphere);
  parallel_for(u.grid.voxels(), [&](std::int64_t b, std::int64_t e) {
    for (std::int64_t v = b; v < e; ++v) {
      const int x = int(v % nx);
      const int y = int((v / nx) % ny);
      const int z = int(v / (std::int64_t(nx) * ny));
      double* out = &w.values[std::size_t(v) * n];
      for (int oz = -r; oz <= r; ++oz) {
        int sz = z - oz;
        for (int oy = -r; oy <= r; ++oy) {
          int sy = y - oy;
          for (int ox = -r; ox <= r; ++ox) {
            int sx = x - ox;
            int px = sx, py = sy, pz = sz;
            if (boundary == Boundary::Periodic) {
              px = ((sx % nx) + nx) % nx;
              py = ((sy % ny) + ny) % ny;
              pz = ((sz % nz) + nz) % nz;
            } else if (sx < 0 || sx >= nx || sy < 0 || sy >= ny || sz < 0 ||
                       sz >= nz) {
              continue;
            }
            const double* src = &uw[u.index(px, py, pz, 0)];
            const std::size_t o = k.offset_index(ox, oy, oz);
            const double* row = &k.values[o * n * n];
            for (int i = 0; i < n; ++i)
              out[i] += simd::dot(row + std::size_t(i) * n, src, n);
          }
        }
      }
    }
  });
  return w;
}

FodField enhance(const FodField& u, const DiffusionParams& p, int radius,
                 SectionChoice s, Boundary boundary) {
  const KernelTable k =
      build_kernel_table(p, s, radius, u.sphere, u.grid.spacing);
  return shift_twist_convolve(k, u, boundary);
}

}  // namespace stk
