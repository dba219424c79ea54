#pragma once

#include <Eigen/Dense>

// Rigid body motions, ZYZ Euler charts and the exp/log maps on SO(3)/SE(3).
// All angles are in radians. Logarithms return the principal branch
// (rotation angle in [0, pi]).

namespace stk {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct RigidMotion {
  Vec3 x = Vec3::Zero();
  Mat3 R = Mat3::Identity();
};

// Logarithm coefficients c^1..c^6: spatial part c^(1) = (c1,c2,c3),
// rotational part c^(2) = (c4,c5,c6).
struct LieCoefficients {
  Vec3 spatial = Vec3::Zero();
  Vec3 rotational = Vec3::Zero();

  double q() const { return rotational.norm(); }
};

Mat3 skew(const Vec3& w);

Mat3 rot_x(double angle);
Mat3 rot_y(double angle);
Mat3 rot_z(double angle);

// R_{e_z,gamma} R_{e_y,beta} R_{e_z,alpha}
Mat3 euler_zyz(double gamma, double beta, double alpha);

// Chart for n in S^2: beta = arccos(n_z) in [0,pi], gamma = atan2(n_y,n_x).
// At the poles (|n_z| = 1) gamma is set to 0.
void orientation_to_beta_gamma(const Vec3& n, double& beta, double& gamma);

RigidMotion compose(const RigidMotion& g, const RigidMotion& g2);
RigidMotion inverse(const RigidMotion& g);

// Principal rotation vector, norm in [0,pi]. The angle-pi branch extracts
// the axis from the largest diagonal entry of (R+I)/2 and fixes the sign so
// the first nonzero component is positive.
Vec3 so3_log(const Mat3& R);
Mat3 so3_exp(const Vec3& w);

LieCoefficients se3_log(const RigidMotion& g);
RigidMotion se3_exp(const LieCoefficients& c);

bool is_rotation(const Mat3& R, double tol = 1e-9);

}  // namespace stk
