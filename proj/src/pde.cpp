#include "stk/pde.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "stk/parallel.hpp"

namespace stk {

void LbOperator::apply(const double* f, double* out) const {
  for (int i = 0; i < n; ++i) {
    double acc = diag[i] * f[i];
    for (int k = row_start[i]; k < row_start[i + 1]; ++k)
      acc += weight[k] * f[col[k]];
    out[i] = acc;
  }
}

double LbOperator::max_eigenvalue() const {
  std::vector<double> v(n), w(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * ((i * 2654435761u) % 97);
  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    apply(v.data(), w.data());
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    lambda = norm;
    for (int i = 0; i < n; ++i) v[i] = w[i] / norm;
  }
  return lambda;
}

LbOperator build_lb_operator(const SphereSampling& s) {
  if (s.triangles.empty())
    throw std::invalid_argument("build_lb_operator: sampling has no mesh");
  const int n = s.size();

  auto cot = [&](int apex, int a, int b) {
    const Vec3 u = s.points[a] - s.points[apex];
    const Vec3 v = s.points[b] - s.points[apex];
    return u.dot(v) / u.cross(v).norm();
  };

  // Cotangent edge weights, then rows scaled by the Voronoi areas.
  std::map<std::pair<int, int>, double> w;
  for (const auto& t : s.triangles) {
    for (int e = 0; e < 3; ++e) {
      const int a = t[e], b = t[(e + 1) % 3], c = t[(e + 2) % 3];
      w[std::minmax(a, b)] += 0.5 * cot(c, a, b);
    }
  }

  std::vector<std::map<int, double>> rows(n);
  for (const auto& [edge, wij] : w) {
    rows[edge.first][edge.second] = wij;
    rows[edge.second][edge.first] = wij;
  }

  LbOperator lb;
  lb.n = n;
  lb.row_start.assign(n + 1, 0);
  lb.diag.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (const auto& [j, wij] : rows[i]) {
      lb.col.push_back(j);
      lb.weight.push_back(wij / s.weights[i]);
      sum += wij;
    }
    lb.diag[i] = -sum / s.weights[i];
    lb.row_start[i + 1] = static_cast<int>(lb.col.size());
  }
  return lb;
}

double stable_dt(const DiffusionParams& p, double spacing,
                 const LbOperator& lb) {
  const double spatial = spacing * spacing / (2.0 * 3.0 * p.d33);
  const double angular = 1.0 / (p.d44 * lb.max_eigenvalue());
  return 0.9 * std::min(spatial, angular);
}

EvolutionConfig make_config(const DiffusionParams& p, double spacing,
                            const LbOperator& lb, Boundary boundary) {
  EvolutionConfig cfg;
  const double dtmax = stable_dt(p, spacing, lb);
  cfg.steps = std::max(1, static_cast<int>(std::ceil(p.t / dtmax)));
  cfg.dt = p.t / cfg.steps;
  cfg.boundary = boundary;
  return cfg;
}

namespace {

// Trilinear stencil for a sample at voxel offset d, |d| <= 1 per component.
struct Stencil {
  int base[3];
  double frac[3];
};

Stencil make_stencil(const Vec3& d) {
  Stencil st;
  for (int a = 0; a < 3; ++a) {
    const double f = std::floor(d[a]);
    st.base[a] = static_cast<int>(f);
    st.frac[a] = d[a] - f;
  }
  return st;
}

}  // namespace

FodField evolve(const FodField& u0, const DiffusionParams& p,
                const EvolutionConfig& cfg) {
  p.validate();
  const LbOperator lb = build_lb_operator(u0.sphere);
  const double dtmax = stable_dt(p, u0.grid.spacing, lb);
  if (cfg.dt > dtmax * (1.0 + 1e-12))
    throw std::invalid_argument("evolve: dt exceeds the stability bound");
  if (cfg.dt <= 0.0 || cfg.steps < 0)
    throw std::invalid_argument("evolve: invalid dt/steps");

  const int n = u0.orientations();
  const int nx = u0.grid.nx, ny = u0.grid.ny, nz = u0.grid.nz;
  const double s2 = u0.grid.spacing * u0.grid.spacing;
  const bool periodic = cfg.boundary == Boundary::Periodic;

  // Line stencils along +/- n_j; the step length equals the voxel spacing,
  // so the offsets in voxel units are just the components of n_j.
  std::vector<Stencil> fwd(n), bwd(n);
  for (int j = 0; j < n; ++j) {
    fwd[j] = make_stencil(u0.sphere.points[j]);
    bwd[j] = make_stencil(-u0.sphere.points[j]);
  }

  FodField cur = u0;
  FodField next(u0.grid, u0.sphere);

  auto sample = [&](const std::vector<double>& f, int x, int y, int z,
                    const Stencil& st, int j) {
    double acc = 0.0;
    for (int cz = 0; cz < 2; ++cz) {
      const double wz = cz ? st.frac[2] : 1.0 - st.frac[2];
      if (wz == 0.0) continue;
      int pz = z + st.base[2] + cz;
      for (int cy = 0; cy < 2; ++cy) {
        const double wy = cy ? st.frac[1] : 1.0 - st.frac[1];
        if (wy == 0.0) continue;
        int py = y + st.base[1] + cy;
        for (int cx = 0; cx < 2; ++cx) {
          const double wx = cx ? st.frac[0] : 1.0 - st.frac[0];
          if (wx == 0.0) continue;
          int px = x + st.base[0] + cx;
          int qx = px, qy = py, qz = pz;
          if (periodic) {
            qx = ((px % nx) + nx) % nx;
            qy = ((py % ny) + ny) % ny;
            qz = ((pz % nz) + nz) % nz;
          } else if (px < 0 || px >= nx || py < 0 || py >= ny || pz < 0 ||
                     pz >= nz) {
            continue;  // zero padding
          }
          acc += wz * wy * wx *
                 f[((std::size_t(qz) * ny + qy) * nx + qx) * n + j];
        }
      }
    }
    return acc;
  };

  std::vector<double> ang_buf;
  for (int step = 0; step < cfg.steps; ++step) {
    parallel_for(u0.grid.voxels(), [&](std::int64_t b, std::int64_t e) {
      std::vector<double> ang(n);
      for (std::int64_t v = b; v < e; ++v) {
        const int x = int(v % nx);
        const int y = int((v / nx) % ny);
        const int z = int(v / (std::int64_t(nx) * ny));
        const double* f = &cur.values[std::size_t(v) * n];
        double* out = &next.values[std::size_t(v) * n];
        lb.apply(f, ang.data());
        for (int j = 0; j < n; ++j) {
          const double plus = sample(cur.values, x, y, z, fwd[j], j);
          const double minus = sample(cur.values, x, y, z, bwd[j], j);
          const double spatial = (plus - 2.0 * f[j] + minus) / s2;
          out[j] = f[j] + cfg.dt * (p.d33 * spatial + p.d44 * ang[j]);
        }
      }
    });
    std::swap(cur.values, next.values);
  }
  return cur;
}

FodField impulse_response(const DiffusionParams& p, const GridSpec& grid,
                          const SphereSampling& sphere,
                          const EvolutionConfig& cfg) {
  FodField u0(grid, sphere);
  const int i0 = nearest_index(sphere, Vec3(0.0, 0.0, 1.0));
  const double vol = std::pow(grid.spacing, 3);
  u0.at(grid.nx / 2, grid.ny / 2, grid.nz / 2, i0) =
      1.0 / (vol * sphere.weights[i0]);
  return evolve(u0, p, cfg);
}

KernelTable build_table_from_impulse(const DiffusionParams& p,
                                     const SphereSampling& sphere, int radius,
                                     double spacing) {
  KernelTable k;
  k.radius = radius;
  k.spacing = spacing;
  k.sphere = sphere;
  const int n = sphere.size();
  k.values.assign(std::size_t(k.offsets()) * n * n, 0.0);

  GridSpec grid{2 * radius + 1, 2 * radius + 1, 2 * radius + 1, spacing};
  const LbOperator lb = build_lb_operator(sphere);
  const EvolutionConfig cfg = make_config(p, spacing, lb, Boundary::Periodic);
  const double vol = std::pow(spacing, 3);
  const int c = radius;

  for (int j = 0; j < n; ++j) {
    FodField u0(grid, sphere);
    u0.at(c, c, c, j) = 1.0 / (vol * sphere.weights[j]);
    const FodField r = evolve(u0, p, cfg);
    for (int oz = -radius; oz <= radius; ++oz)
      for (int oy = -radius; oy <= radius; ++oy)
        for (int ox = -radius; ox <= radius; ++ox) {
          const std::size_t o = k.offset_index(ox, oy, oz);
          for (int i = 0; i < n; ++i)
            k.at(o, i, j) = vol * r.at(c + ox, c + oy, c + oz, i);
        }
  }

  // Evolution conserves mass on the periodic grid; columns are already unit
  // up to roundoff. Renormalize to the table contract exactly.
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::int64_t o = 0; o < k.offsets(); ++o)
      for (int i = 0; i < n; ++i) col += k.at(o, i, j) * sphere.weights[i];
    total += col;
    for (std::int64_t o = 0; o < k.offsets(); ++o)
      for (int i = 0; i < n; ++i) k.at(o, i, j) /= col;
  }
  k.mass = total / n;
  return k;
}

}  // namespace stk
