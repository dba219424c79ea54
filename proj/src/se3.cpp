#include "stk/se3.hpp"

#include <cmath>

namespace stk {

Mat3 skew(const Vec3& w) {
  Mat3 m;
  m << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
       -w.y(), w.x(), 0.0;
  return m;
}

Mat3 rot_x(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << 1, 0, 0,
       0, c, -s,
       0, s, c;
  return m;
}

Mat3 rot_y(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << c, 0, s,
       0, 1, 0,
       -s, 0, c;
  return m;
}

Mat3 rot_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << c, -s, 0,
       s, c, 0,
       0, 0, 1;
  return m;
}

Mat3 euler_zyz(double gamma, double beta, double alpha) {
  return rot_z(gamma) * rot_y(beta) * rot_z(alpha);
}

void orientation_to_beta_gamma(const Vec3& n, double& beta, double& gamma) {
  const double nz = std::clamp(n.z(), -1.0, 1.0);
  beta = std::acos(nz);
  // At the poles the azimuth is undefined; the kernels built on top are
  // invariant under this choice.
  gamma = (std::abs(nz) >= 1.0 - 1e-15) ? 0.0 : std::atan2(n.y(), n.x());
}

RigidMotion compose(const RigidMotion& g, const RigidMotion& g2) {
  return {g.x + g.R * g2.x, g.R * g2.R};
}

RigidMotion inverse(const RigidMotion& g) {
  return {-(g.R.transpose() * g.x), g.R.transpose()};
}

Vec3 so3_log(const Mat3& R) {
  // Via the unit quaternion (Shepperd extraction, stable at every angle):
  // theta = 2 atan2(|q_v|, q_w), axis = q_v/|q_v|. Principal branch q_w >= 0.
  Eigen::Quaterniond q(R);
  if (q.w() < 0.0) q.coeffs() = -q.coeffs();
  const Vec3 qv = q.vec();
  const double s = qv.norm();
  const double theta = 2.0 * std::atan2(s, q.w());
  if (s < 1e-12) return 2.0 * qv;  // theta ~ 0: log ~ 2 q_v

  Vec3 axis = qv / s;
  if (theta > M_PI - 1e-9) {
    // At exactly pi both signs of the axis are valid; pick the one whose
    // first nonzero component is positive.
    for (int i = 0; i < 3; ++i) {
      if (std::abs(axis[i]) > 1e-12) {
        if (axis[i] < 0.0) axis = -axis;
        break;
      }
    }
  }
  return theta * axis;
}

Mat3 so3_exp(const Vec3& w) {
  const double q = w.norm();
  const Mat3 O = skew(w);
  if (q < 1e-8) {
    return Mat3::Identity() + O + 0.5 * O * O;
  }
  const double a = std::sin(q) / q;
  const double b = (1.0 - std::cos(q)) / (q * q);
  return Mat3::Identity() + a * O + b * O * O;
}

namespace {

// f(q) = 1 - (q/2) cot(q/2), series below 1e-4 where the closed form
// cancels catastrophically.
double one_minus_half_q_cot_over_q2(double q) {
  if (q < 1e-4) {
    const double q2 = q * q;
    return 1.0 / 12.0 + q2 / 720.0;
  }
  return (1.0 - (q / 2.0) / std::tan(q / 2.0)) / (q * q);
}

}  // namespace

LieCoefficients se3_log(const RigidMotion& g) {
  LieCoefficients c;
  c.rotational = so3_log(g.R);
  const double q = c.rotational.norm();
  const Mat3 O = skew(c.rotational);
  const Mat3 v_inv = Mat3::Identity() - 0.5 * O +
                     one_minus_half_q_cot_over_q2(q) * (O * O);
  c.spatial = v_inv * g.x;
  return c;
}

RigidMotion se3_exp(const LieCoefficients& c) {
  RigidMotion g;
  g.R = so3_exp(c.rotational);
  const double q = c.q();
  const Mat3 O = skew(c.rotational);
  double b, cc;
  if (q < 1e-4) {
    const double q2 = q * q;
    b = 0.5 - q2 / 24.0;
    cc = 1.0 / 6.0 - q2 / 120.0;
  } else {
    b = (1.0 - std::cos(q)) / (q * q);
    cc = (q - std::sin(q)) / (q * q * q);
  }
  const Mat3 V = Mat3::Identity() + b * O + cc * O * O;
  g.x = V * c.spatial;
  return g;
}

bool is_rotation(const Mat3& R, double tol) {
  return (R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff() < tol &&
         std::abs(R.determinant() - 1.0) < tol;
}

}  // namespace stk
