#pragma once

#include "stk/convolution.hpp"
#include "stk/field.hpp"

// Explicit finite-difference evolution of the quotient diffusion PDE
//   dW/dt = D33 (n . grad)^2 W + D44 Lap_LB W,
// used as a ground-truth oracle for the analytic kernel and the
// convolution machinery.

namespace stk {

// Discrete Laplace-Beltrami operator on a sphere sampling: cotangent-weighted
// graph Laplacian divided by the Voronoi areas. Row sums are zero and the
// operator is symmetric w.r.t. the quadrature weights.
struct LbOperator {
  int n = 0;
  std::vector<int> row_start;   // CSR, size n+1
  std::vector<int> col;
  std::vector<double> weight;   // off-diagonal w_ij >= 0
  std::vector<double> diag;     // -sum of row off-diagonals

  // out_i = diag_i f_i + sum_j w_ij f_j
  void apply(const double* f, double* out) const;
  double max_eigenvalue() const;  // |lambda|_max by power iteration
};

LbOperator build_lb_operator(const SphereSampling& s);

struct EvolutionConfig {
  double dt = 0.0;
  int steps = 0;
  Boundary boundary = Boundary::Zero;
};

// Forward-Euler stability bound used by make_config and enforced by evolve.
double stable_dt(const DiffusionParams& p, double spacing,
                 const LbOperator& lb);

// Largest step count / dt with steps * dt = p.t and dt <= stable_dt.
EvolutionConfig make_config(const DiffusionParams& p, double spacing,
                            const LbOperator& lb,
                            Boundary boundary = Boundary::Zero);

// Forward-Euler evolution from u0 over cfg.steps steps. Throws if cfg.dt
// violates the stability bound.
FodField evolve(const FodField& u0, const DiffusionParams& p,
                const EvolutionConfig& cfg);

// Evolution of a unit-mass delta at the center voxel, orientation nearest
// e_z: the discrete Green's function on the quotient.
FodField impulse_response(const DiffusionParams& p, const GridSpec& grid,
                          const SphereSampling& sphere,
                          const EvolutionConfig& cfg);

// Kernel table assembled from per-source-orientation PDE impulse responses
// on a periodic (2r+1)^3 grid; by construction it represents the same
// linear operator as the evolution itself.
KernelTable build_table_from_impulse(const DiffusionParams& p,
                                     const SphereSampling& sphere, int radius,
                                     double spacing);

}  // namespace stk
