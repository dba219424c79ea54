#include "stk/kernel.hpp"

#include <cmath>

namespace stk {

Mat3 section_rotation(const Vec3& n, SectionChoice s) {
  double beta, gamma;
  orientation_to_beta_gamma(n, beta, gamma);
  return s == SectionChoice::NewSection ? euler_zyz(gamma, beta, -gamma)
                                        : euler_zyz(gamma, beta, 0.0);
}

double weighted_modulus(const LieCoefficients& c, const DiffusionParams& p) {
  const Vec3& c1 = c.spatial;
  const Vec3& c2 = c.rotational;
  const double planar = (c1.x() * c1.x() + c1.y() * c1.y()) / (p.d33 * p.d44);
  const double twist = c2.z() * c2.z() / p.d44;
  const double along = c1.z() * c1.z() / p.d33 +
                       (c2.x() * c2.x() + c2.y() * c2.y()) / p.d44;
  return std::pow(planar + twist + along * along, 0.25);
}

double kernel_prefactor(const DiffusionParams& p) {
  const double a = 4.0 * M_PI * p.t * p.t * p.d33 * p.d44;
  return 1.0 / (a * a);
}

double kernel_log(const RigidMotion& g, const DiffusionParams& p) {
  const double m = weighted_modulus(se3_log(g), p);
  return kernel_prefactor(p) * std::exp(-m * m / (4.0 * p.t));
}

double kernel_quotient(const Vec3& y, const Vec3& n, const DiffusionParams& p,
                       SectionChoice s) {
  return kernel_log({y, section_rotation(n, s)}, p);
}

namespace {

struct TwoPointArgs {
  Vec3 y, n, y2, n2;

  bool operator<(const TwoPointArgs& o) const {
    const Vec3* mine[4] = {&y, &n, &y2, &n2};
    const Vec3* theirs[4] = {&o.y, &o.n, &o.y2, &o.n2};
    for (int v = 0; v < 4; ++v)
      for (int i = 0; i < 3; ++i) {
        const double x = (*mine[v])[i], z = (*theirs[v])[i];
        if (x != z) return x < z;
      }
    return false;
  }
};

}  // namespace

double kernel_two_point(const Vec3& y, const Vec3& n, const Vec3& y2,
                        const Vec3& n2, const DiffusionParams& p,
                        SectionChoice s) {
  Vec3 py = y, pn = n, py2 = y2, pn2 = n2;
  if (s == SectionChoice::NewSection) {
    // The new-section kernel is exactly invariant under swapping its two
    // arguments and under flipping both orientation signs. Evaluating the
    // lexicographically smallest member of that 4-element orbit realizes
    // those identities bitwise, so pair-reduced sums match literal double
    // loops exactly.
    const TwoPointArgs orbit[4] = {{y, n, y2, n2},
                                   {y2, n2, y, n},
                                   {y, -n, y2, -n2},
                                   {y2, -n2, y, -n}};
    int best = 0;
    for (int v = 1; v < 4; ++v)
      if (orbit[v] < orbit[best]) best = v;
    py = orbit[best].y;
    pn = orbit[best].n;
    py2 = orbit[best].y2;
    pn2 = orbit[best].n2;
  }
  const Mat3 R2t = section_rotation(pn2, s).transpose();
  return kernel_quotient(R2t * (py - py2), R2t * pn, p, s);
}

double asymmetry_sum(int grid_radius, const SphereSampling& sphere,
                     const DiffusionParams& p, SectionChoice s) {
  const Vec3 ez(0.0, 0.0, 1.0);
  const Vec3 zero = Vec3::Zero();
  const double scale = 1.0 / kernel_prefactor(p);
  double total = 0.0;
  const int r = grid_radius;
  for (int iz = -r; iz <= r; ++iz) {
    for (int iy = -r; iy <= r; ++iy) {
      for (int ix = -r; ix <= r; ++ix) {
        const Vec3 y(ix, iy, iz);
        for (const Vec3& n : sphere.points) {
          const double forward = kernel_two_point(y, n, zero, ez, p, s);
          const double backward = kernel_two_point(zero, ez, y, n, p, s);
          total += scale * std::abs(forward - backward);
        }
      }
    }
  }
  return total;
}

}  // namespace stk
