#include "stk/sphere.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace stk {

namespace {

// Signed spherical triangle area (Van Oosterom & Strackee).
double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double num = a.dot(b.cross(c));
  const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return std::abs(2.0 * std::atan2(num, den));
}

SphereSampling icosahedron() {
  SphereSampling s;
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  for (double sa : {-1.0, 1.0}) {
    for (double sb : {-phi, phi}) {
      s.points.emplace_back(0.0, sa, sb);
      s.points.emplace_back(sa, sb, 0.0);
      s.points.emplace_back(sb, 0.0, sa);
    }
  }
  for (auto& p : s.points) p.normalize();

  // Faces: mutually adjacent triples at the minimal pairwise distance.
  const int n = s.size();
  double edge = 1e30;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      edge = std::min(edge, (s.points[i] - s.points[j]).norm());
  auto adjacent = [&](int i, int j) {
    return (s.points[i] - s.points[j]).norm() < edge * 1.05;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (adjacent(i, j) && adjacent(j, k) && adjacent(i, k))
          s.triangles.push_back({i, j, k});
  return s;
}

SphereSampling subdivide(const SphereSampling& in) {
  SphereSampling out;
  out.points = in.points;
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int i, int j) {
    auto key = std::minmax(i, j);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    Vec3 m = (out.points[i] + out.points[j]).normalized();
    out.points.push_back(m);
    int idx = static_cast<int>(out.points.size()) - 1;
    midpoint.emplace(key, idx);
    return idx;
  };
  for (const auto& t : in.triangles) {
    const int a = t[0], b = t[1], c = t[2];
    const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
    out.triangles.push_back({a, ab, ca});
    out.triangles.push_back({b, bc, ab});
    out.triangles.push_back({c, ca, bc});
    out.triangles.push_back({ab, bc, ca});
  }
  return out;
}

// Spherical Voronoi cell areas: each triangle is split at its circumcenter
// and arc midpoints; the quad around each vertex joins its cell. The quads
// tile the triangle exactly, so the weights sum to the full 4*pi.
void compute_voronoi_weights(SphereSampling& s) {
  s.weights.assign(s.points.size(), 0.0);
  for (const auto& t : s.triangles) {
    const Vec3& a = s.points[t[0]];
    const Vec3& b = s.points[t[1]];
    const Vec3& c = s.points[t[2]];
    Vec3 cc = (b - a).cross(c - a);
    if (cc.dot(a) < 0.0) cc = -cc;  // circumcenter on the triangle's side
    cc.normalize();
    const Vec3 mab = (a + b).normalized();
    const Vec3 mbc = (b + c).normalized();
    const Vec3 mca = (c + a).normalized();
    s.weights[t[0]] += spherical_triangle_area(a, mab, cc) +
                       spherical_triangle_area(a, cc, mca);
    s.weights[t[1]] += spherical_triangle_area(b, mbc, cc) +
                       spherical_triangle_area(b, cc, mab);
    s.weights[t[2]] += spherical_triangle_area(c, mca, cc) +
                       spherical_triangle_area(c, cc, mbc);
  }
}

}  // namespace

SphereSampling icosphere(int level) {
  if (level < 0 || level > 5)
    throw std::invalid_argument("icosphere: level must be in [0,5]");
  SphereSampling s = icosahedron();
  for (int l = 0; l < level; ++l) s = subdivide(s);
  compute_voronoi_weights(s);
  s.level = level;
  return s;
}

SphereSampling antipodalize(SphereSampling s) {
  const int n = s.size();
  s.antipodal_map.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    const Vec3 target = -s.points[i];
    int best = nearest_index(s, target);
    // angular distance via the cross product (accurate near zero)
    const double angle =
        std::atan2(s.points[best].cross(target).norm(), s.points[best].dot(target));
    if (angle > 1e-9)
      throw std::runtime_error("antipodalize: sampling is not centrally symmetric");
    s.antipodal_map[i] = best;
  }
  for (int i = 0; i < n; ++i) {
    if (s.antipodal_map[s.antipodal_map[i]] != i)
      throw std::runtime_error("antipodalize: map is not an involution");
  }
  return s;
}

int nearest_index(const SphereSampling& s, const Vec3& n) {
  int best = 0;
  double best_dot = -2.0;
  for (int i = 0; i < s.size(); ++i) {
    const double d = s.points[i].dot(n);
    if (d > best_dot) {
      best_dot = d;
      best = i;
    }
  }
  return best;
}

std::string sphere_table(const SphereSampling& s) {
  std::ostringstream os;
  os.precision(17);
  os << "# index\tnx\tny\tnz\tweight\n";
  for (int i = 0; i < s.size(); ++i) {
    os << i << '\t' << s.points[i].x() << '\t' << s.points[i].y() << '\t'
       << s.points[i].z() << '\t' << s.weights[i] << '\n';
  }
  return os.str();
}

}  // namespace stk
