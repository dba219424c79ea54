#include <doctest.h>

#include <random>

#include "stk/pde.hpp"

using namespace stk;

TEST_CASE("laplace-beltrami annihilates constants") {
  const SphereSampling s = icosphere(2);
  const LbOperator lb = build_lb_operator(s);
  std::vector<double> f(s.size(), 3.25), out(s.size());
  lb.apply(f.data(), out.data());
  for (double v : out) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("laplace-beltrami: n_z is an eigenfunction with eigenvalue -2") {
  // Y_1^0 up to scale; l(l+1) = 2
  const SphereSampling s = icosphere(2);
  const LbOperator lb = build_lb_operator(s);
  std::vector<double> f(s.size()), out(s.size());
  for (int i = 0; i < s.size(); ++i) f[i] = s.points[i].z();
  lb.apply(f.data(), out.data());
  double num = 0.0, den = 0.0;
  for (int i = 0; i < s.size(); ++i) {
    const double r = out[i] - (-2.0) * f[i];
    num += r * r * s.weights[i];
    den += 4.0 * f[i] * f[i] * s.weights[i];
  }
  CHECK(std::sqrt(num / den) <= 0.1);
}

TEST_CASE("laplace-beltrami is symmetric under the quadrature weights") {
  const SphereSampling s = icosphere(1);
  const LbOperator lb = build_lb_operator(s);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> f(s.size()), g(s.size()), lf(s.size()), lg(s.size());
  for (int i = 0; i < s.size(); ++i) {
    f[i] = d(rng);
    g[i] = d(rng);
  }
  lb.apply(f.data(), lf.data());
  lb.apply(g.data(), lg.data());
  double a = 0.0, b = 0.0;
  for (int i = 0; i < s.size(); ++i) {
    a += lf[i] * g[i] * s.weights[i];
    b += f[i] * lg[i] * s.weights[i];
  }
  CHECK(a == doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("evolution leaves constants unchanged under periodic wrap") {
  const SphereSampling s = icosphere(1);
  const LbOperator lb = build_lb_operator(s);
  const DiffusionParams p{1.0, 0.02, 0.5};
  const GridSpec grid{5, 5, 5, 1.0};
  const EvolutionConfig cfg = make_config(p, grid.spacing, lb, Boundary::Periodic);
  FodField u(grid, s);
  for (auto& v : u.values) v = 1.5;
  const FodField w = evolve(u, p, cfg);
  for (double v : w.values) CHECK(v == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("evolution conserves mass and nonnegativity under periodic wrap") {
  const SphereSampling s = icosphere(1);
  const LbOperator lb = build_lb_operator(s);
  const DiffusionParams p{1.0, 0.02, 0.5};
  const GridSpec grid{5, 5, 5, 1.0};
  const EvolutionConfig cfg = make_config(p, grid.spacing, lb, Boundary::Periodic);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  FodField u(grid, s);
  for (auto& v : u.values) v = d(rng);
  const FodField w = evolve(u, p, cfg);
  CHECK(w.mass() == doctest::Approx(u.mass()).epsilon(1e-8));
  for (double v : w.values) CHECK(v >= -1e-14);
}

TEST_CASE("evolution is linear") {
  const SphereSampling s = icosphere(1);
  const LbOperator lb = build_lb_operator(s);
  const DiffusionParams p{1.0, 0.02, 0.25};
  const GridSpec grid{5, 5, 5, 1.0};
  const EvolutionConfig cfg = make_config(p, grid.spacing, lb);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  FodField u1(grid, s), u2(grid, s), mix(grid, s);
  for (auto& v : u1.values) v = d(rng);
  for (auto& v : u2.values) v = d(rng);
  const double a = 2.0, b = -0.5;
  for (std::size_t i = 0; i < mix.values.size(); ++i)
    mix.values[i] = a * u1.values[i] + b * u2.values[i];
  const FodField w1 = evolve(u1, p, cfg);
  const FodField w2 = evolve(u2, p, cfg);
  const FodField wm = evolve(mix, p, cfg);
  for (std::size_t i = 0; i < mix.values.size(); ++i)
    CHECK(wm.values[i] ==
          doctest::Approx(a * w1.values[i] + b * w2.values[i]).epsilon(1e-10));
}

TEST_CASE("unstable time step is rejected") {
  const SphereSampling s = icosphere(1);
  const LbOperator lb = build_lb_operator(s);
  const DiffusionParams p{1.0, 0.02, 0.5};
  EvolutionConfig cfg = make_config(p, 1.0, lb);
  cfg.dt = 10.0 * stable_dt(p, 1.0, lb);
  cfg.steps = 1;
  FodField u({3, 3, 3, 1.0}, s);
  CHECK_THROWS_AS(evolve(u, p, cfg), std::invalid_argument);
}

TEST_CASE("impulse response has unit mass and elongates along its orientation") {
  const SphereSampling s = icosphere(1);
  const LbOperator lb = build_lb_operator(s);
  const DiffusionParams p{1.0, 0.02, 1.0};
  const GridSpec grid{9, 9, 9, 1.0};
  const EvolutionConfig cfg = make_config(p, grid.spacing, lb, Boundary::Periodic);
  const FodField r = impulse_response(p, grid, s, cfg);
  CHECK(r.mass() == doctest::Approx(1.0).epsilon(1e-8));

  // orientation-summed spatial density: much wider along z than along x
  auto density = [&](int x, int y, int z) {
    double acc = 0.0;
    for (int j = 0; j < s.size(); ++j) acc += r.at(x, y, z, j) * s.weights[j];
    return acc;
  };
  const double along = density(4, 4, 6);
  const double across = density(6, 4, 4);
  CHECK(along > 2.0 * across);
}

TEST_CASE("impulse response respects a 180-degree rotation about z") {
  // a 180-degree rotation about z maps both the grid and the icosphere
  // sampling to themselves exactly, and the initial delta sits on e_z, so the
  // discrete evolution commutes with the rotation
  const SphereSampling s = icosphere(1);
  const LbOperator lb = build_lb_operator(s);
  const DiffusionParams p{1.0, 0.02, 1.0};
  const GridSpec grid{7, 7, 7, 1.0};
  const EvolutionConfig cfg = make_config(p, grid.spacing, lb, Boundary::Periodic);
  const FodField r = impulse_response(p, grid, s, cfg);
  std::vector<int> rot(s.size());
  for (int j = 0; j < s.size(); ++j) {
    const Vec3 q(-s.points[j].x(), -s.points[j].y(), s.points[j].z());
    rot[j] = nearest_index(s, q);
    REQUIRE((s.points[rot[j]] - q).norm() < 1e-9);
  }
  const double peak = r.at(3, 3, 3, nearest_index(s, Vec3(0, 0, 1)));
  for (int z = 0; z < 7; ++z)
    for (int y = 0; y < 7; ++y)
      for (int x = 0; x < 7; ++x)
        for (int j = 0; j < s.size(); ++j) {
          const double a = r.at(x, y, z, j);
          const double b = r.at(6 - x, 6 - y, z, rot[j]);
          CHECK(std::abs(a - b) <= 1e-10 * peak);
        }
}

TEST_CASE("impulse-derived table reproduces the evolution operator") {
  const SphereSampling s = icosphere(1);
  const DiffusionParams p{1.0, 0.02, 0.5};
  const int radius = 3;
  const KernelTable k = build_table_from_impulse(p, s, radius, 1.0);

  for (int j = 0; j < s.size(); ++j) {
    double col = 0.0;
    for (std::int64_t o = 0; o < k.offsets(); ++o)
      for (int i = 0; i < s.size(); ++i) col += k.at(o, i, j) * s.weights[i];
    CHECK(col == doctest::Approx(1.0).epsilon(1e-12));
  }

  // convolving a random field with the table matches running the PDE
  const GridSpec grid{7, 7, 7, 1.0};
  const LbOperator lb = build_lb_operator(s);
  const EvolutionConfig cfg = make_config(p, grid.spacing, lb, Boundary::Periodic);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  FodField u(grid, s);
  for (auto& v : u.values) v = d(rng);
  const FodField via_pde = evolve(u, p, cfg);
  const FodField via_table = shift_twist_convolve(k, u, Boundary::Periodic);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    const double r = via_pde.values[i] - via_table.values[i];
    num += r * r;
    den += via_pde.values[i] * via_pde.values[i];
  }
  CHECK(std::sqrt(num / den) <= 1e-6);
}
