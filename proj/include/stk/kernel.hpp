#pragma once

#include <stdexcept>

#include "stk/se3.hpp"
#include "stk/sphere.hpp"

// Analytic approximations of the hypo-elliptic diffusion kernel on
// R^3 x S^2, built from the SE(3) logarithm. The NewSection variant
// (alpha = -gamma) carries the z-rotation invariance and inversion
// symmetry of the exact kernel; ZeroSection (alpha = 0) is the previous
// approximation kept for comparison.

namespace stk {

struct DiffusionParams {
  double d33;  // spatial diffusivity, length^2/time
  double d44;  // angular diffusivity, rad^2/time
  double t;    // evolution time

  void validate() const {
    if (!(d33 > 0.0) || !(d44 > 0.0) || !(t > 0.0))
      throw std::invalid_argument("DiffusionParams: d33, d44, t must be > 0");
  }
};

enum class SectionChoice { NewSection, ZeroSection };

// Representative rotation R_n with R_n e_z = n for the given section.
Mat3 section_rotation(const Vec3& n, SectionChoice s);

// Fourth root of (|c1|^2+|c2|^2)/(D33 D44) + |c6|^2/D44
//               + ((c3)^2/D33 + (|c4|^2+|c5|^2)/D44)^2.
double weighted_modulus(const LieCoefficients& c, const DiffusionParams& p);

// Peak value of the kernel, attained at the identity element.
double kernel_prefactor(const DiffusionParams& p);

// Gaussian estimate on the group: prefactor * exp(-modulus^2 / (4t)).
double kernel_log(const RigidMotion& g, const DiffusionParams& p);

// Kernel on the quotient, p(y, n), with the section's representative R_n.
double kernel_quotient(const Vec3& y, const Vec3& n, const DiffusionParams& p,
                       SectionChoice s);

// Two-point kernel k(y,n,y',n') = p(R_{n'}^T (y - y'), R_{n'}^T n).
double kernel_two_point(const Vec3& y, const Vec3& n, const Vec3& y2,
                        const Vec3& n2, const DiffusionParams& p,
                        SectionChoice s);

// Sum over the (2r+1)^3 integer grid and all sampled orientations of
// |k(y,n,0,e_z) - k(0,e_z,y,n)|, with both evaluations scaled by the
// kernel's peak value so sums at different t are comparable.
double asymmetry_sum(int grid_radius, const SphereSampling& sphere,
                     const DiffusionParams& p, SectionChoice s);

}  // namespace stk
