#include <doctest.h>

#include <random>

#include "stk/se3.hpp"

using namespace stk;

namespace {

std::mt19937_64 rng(20240811);

Vec3 random_unit() {
  std::normal_distribution<double> g;
  Vec3 v(g(rng), g(rng), g(rng));
  return v.normalized();
}

RigidMotion random_motion(double max_angle = M_PI - 1e-3) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g;
  RigidMotion m;
  m.R = so3_exp(random_unit() * (u(rng) * max_angle));
  m.x = Vec3(g(rng), g(rng), g(rng)) * 3.0;
  return m;
}

double motion_diff(const RigidMotion& a, const RigidMotion& b) {
  return std::max((a.x - b.x).cwiseAbs().maxCoeff(),
                  (a.R - b.R).cwiseAbs().maxCoeff());
}

}  // namespace

TEST_CASE("compose: identity, inverse, hand example") {
  const RigidMotion id;
  const RigidMotion g = random_motion();
  CHECK(motion_diff(compose(id, g), g) < 1e-15);
  CHECK(motion_diff(compose(g, inverse(g)), id) < 1e-12);

  const RigidMotion a{Vec3(1, 0, 0), rot_z(M_PI / 2)};
  const RigidMotion b{Vec3(1, 0, 0), Mat3::Identity()};
  const RigidMotion ab = compose(a, b);
  CHECK((ab.x - Vec3(1, 1, 0)).norm() < 1e-15);
  CHECK((ab.R - rot_z(M_PI / 2)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("compose is associative on random triples") {
  for (int k = 0; k < 100; ++k) {
    const RigidMotion a = random_motion(), b = random_motion(), c = random_motion();
    CHECK(motion_diff(compose(compose(a, b), c), compose(a, compose(b, c))) < 1e-12);
  }
}

TEST_CASE("inverse closed form") {
  CHECK(motion_diff(inverse(RigidMotion{}), RigidMotion{}) < 1e-15);
  const RigidMotion g{Vec3(0, 0, 1), Mat3::Identity()};
  CHECK((inverse(g).x - Vec3(0, 0, -1)).norm() < 1e-15);
}

TEST_CASE("euler_zyz basics") {
  CHECK((euler_zyz(0, 0, 0) - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  const double beta = 0.7;
  const Vec3 n = euler_zyz(0, beta, 0) * Vec3(0, 0, 1);
  CHECK((n - Vec3(std::sin(beta), 0, std::cos(beta))).norm() < 1e-15);
}

TEST_CASE("the alpha=-gamma section is invariant under inversion") {
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int k = 0; k < 100; ++k) {
    const double gamma = u(rng), beta = u(rng) / 2;
    const Mat3 inv = euler_zyz(gamma, beta, -gamma).transpose();
    CHECK((inv - euler_zyz(gamma, -beta, -gamma)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("orientation chart") {
  double beta, gamma;
  orientation_to_beta_gamma(Vec3(0, 0, 1), beta, gamma);
  CHECK(beta == 0.0);
  CHECK(gamma == 0.0);
  orientation_to_beta_gamma(Vec3(1, 0, 0), beta, gamma);
  CHECK(beta == doctest::Approx(M_PI / 2));
  CHECK(gamma == 0.0);
  orientation_to_beta_gamma(Vec3(0, 1, 0), beta, gamma);
  CHECK(beta == doctest::Approx(M_PI / 2));
  CHECK(gamma == doctest::Approx(M_PI / 2));

  for (int k = 0; k < 200; ++k) {
    const Vec3 n = random_unit();
    orientation_to_beta_gamma(n, beta, gamma);
    CHECK((euler_zyz(gamma, beta, 0) * Vec3(0, 0, 1) - n).norm() < 1e-12);
  }
}

TEST_CASE("so3_log principal branch") {
  CHECK(so3_log(Mat3::Identity()).norm() < 1e-15);
  const Vec3 w = so3_log(rot_y(0.9));
  CHECK((w - Vec3(0, 0.9, 0)).norm() < 1e-12);

  // angle-pi branch with the nonnegative-axis sign convention
  const Vec3 wz = so3_log(rot_z(M_PI));
  CHECK((wz - Vec3(0, 0, M_PI)).norm() < 1e-9);
  const Vec3 wx = so3_log(rot_x(M_PI));
  CHECK((wx - Vec3(M_PI, 0, 0)).norm() < 1e-9);

  for (int k = 0; k < 1000; ++k) {
    const Mat3 R = random_motion().R;
    const Vec3 v = so3_log(R);
    CHECK(v.norm() <= M_PI + 1e-12);
    CHECK((so3_exp(v) - R).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("se3_log closed forms") {
  const LieCoefficients zero = se3_log(RigidMotion{});
  CHECK(zero.spatial.norm() < 1e-15);
  CHECK(zero.rotational.norm() < 1e-15);

  const LieCoefficients pure_t = se3_log({Vec3(1, 2, 3), Mat3::Identity()});
  CHECK((pure_t.spatial - Vec3(1, 2, 3)).norm() < 1e-12);
  CHECK(pure_t.rotational.norm() < 1e-15);

  const LieCoefficients pure_r = se3_log({Vec3::Zero(), rot_y(0.8)});
  CHECK(pure_r.spatial.norm() < 1e-15);
  CHECK((pure_r.rotational - Vec3(0, 0.8, 0)).norm() < 1e-12);
}

TEST_CASE("se3_exp closed forms") {
  LieCoefficients c;
  CHECK(motion_diff(se3_exp(c), RigidMotion{}) < 1e-15);
  c.spatial = Vec3(0, 0, 2.5);
  CHECK(motion_diff(se3_exp(c), {Vec3(0, 0, 2.5), Mat3::Identity()}) < 1e-15);
  c.spatial.setZero();
  c.rotational = Vec3(0, 0.8, 0);
  CHECK(motion_diff(se3_exp(c), {Vec3::Zero(), rot_y(0.8)}) < 1e-12);
}

TEST_CASE("exp/log round trip over 1e4 random motions") {
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const RigidMotion g = random_motion(M_PI - 1e-3);
    worst = std::max(worst, motion_diff(se3_exp(se3_log(g)), g));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("se3_log small-angle series is smooth") {
  // across the q = 1e-4 series switch
  for (double q : {1e-6, 9.9e-5, 1.0001e-4, 1e-3}) {
    const RigidMotion g{Vec3(1, -2, 0.5), so3_exp(Vec3(0, q, 0))};
    CHECK(motion_diff(se3_exp(se3_log(g)), g) < 1e-12);
  }
}
