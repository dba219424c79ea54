#include "stk/fbc.hpp"

#include <cmath>
#include <stdexcept>

#include "stk/parallel.hpp"

namespace stk {

Streamline make_streamline(std::vector<Vec3> points) {
  Streamline f;
  for (const auto& pt : points) {
    if (f.points.empty() || (pt - f.points.back()).norm() > 1e-9)
      f.points.push_back(pt);
  }
  if (f.points.size() < 2)
    throw std::invalid_argument("streamline needs at least 2 distinct points");
  const std::size_t n = f.points.size();
  f.tangents.resize(n);
  for (std::size_t j = 0; j + 1 < n; ++j)
    f.tangents[j] = (f.points[j + 1] - f.points[j]).normalized();
  f.tangents[n - 1] = f.tangents[n - 2];
  return f;
}

namespace {

// Sign-canonical representative of +-n: first nonzero component positive.
// Point densities are evaluated at the canonical tangents, which together
// with the sigma-sum over sources makes them independent of the tangent
// sign convention of the input.
Vec3 canonical_sign(const Vec3& n) {
  for (int a = 0; a < 3; ++a) {
    if (n[a] > 0.0) return n;
    if (n[a] < 0.0) return -n;
  }
  return n;
}

struct FlatPoint {
  Vec3 y;
  Vec3 n;  // canonical sign
  int fiber;
  int point;
};

// Symmetrized kernel for an unordered point pair, evaluated in canonical
// (lower global index first) argument order so that any loop structure
// produces identical floating-point values.
double pair_kernel(const FlatPoint& a, const FlatPoint& b,
                   const DiffusionParams& p) {
  return kernel_two_point(a.y, a.n, b.y, b.n, p, SectionChoice::NewSection) +
         kernel_two_point(a.y, a.n, b.y, -b.n, p, SectionChoice::NewSection);
}

}  // namespace

std::vector<std::vector<double>> fiber_density(const Tractogram& tr,
                                               const DiffusionParams& p,
                                               std::uint64_t* pair_count) {
  p.validate();
  if (tr.fibers.empty()) throw std::invalid_argument("empty tractogram");

  std::vector<FlatPoint> pts;
  for (int fi = 0; fi < static_cast<int>(tr.fibers.size()); ++fi) {
    const Streamline& f = tr.fibers[fi];
    for (int j = 0; j < static_cast<int>(f.points.size()); ++j)
      pts.push_back({f.points[j], canonical_sign(f.tangents[j]), fi, j});
  }
  const std::int64_t n = static_cast<std::int64_t>(pts.size());

  // One symmetric evaluation per unordered pair (incl. self pairs), rows
  // processed in index order. Each row's kernel values are computed in
  // parallel into a scratch buffer, then folded into the accumulators
  // sequentially, so every point sees its contributions in the same order
  // as a literal double loop would produce them: results are bit-identical
  // to the naive reference and independent of the worker count.
  std::vector<double> acc(n, 0.0);
  std::vector<double> row(n);
  std::uint64_t evals = 0;
  for (std::int64_t a = 0; a < n; ++a) {
    parallel_for(n - a, [&](std::int64_t lo, std::int64_t hi) {
      for (std::int64_t off = lo; off < hi; ++off)
        row[a + off] = pair_kernel(pts[a], pts[a + off], p);
    });
    evals += static_cast<std::uint64_t>(n - a);
    for (std::int64_t b = a; b < n; ++b) {
      acc[a] += row[b];
      if (b != a) acc[b] += row[b];
    }
  }
  if (pair_count) *pair_count = evals;

  std::vector<std::vector<double>> density(tr.fibers.size());
  for (std::size_t fi = 0; fi < tr.fibers.size(); ++fi)
    density[fi].assign(tr.fibers[fi].points.size(), 0.0);
  for (std::int64_t b = 0; b < n; ++b)
    density[pts[b].fiber][pts[b].point] = acc[b] / double(n);
  return density;
}

FbcResult fbc_scores(const Tractogram& tr,
                     const std::vector<std::vector<double>>& density,
                     int window) {
  if (window == 0) throw std::invalid_argument("fbc window must be >= 1");
  FbcResult r;
  r.point_density = density;
  r.local_fbc.resize(density.size());
  for (std::size_t fi = 0; fi < density.size(); ++fi) {
    const auto& d = density[fi];
    const int np = static_cast<int>(d.size());
    double sum = 0.0;
    for (double v : d) sum += v;
    r.fiber_fbc.push_back(sum);
    r.fiber_fbc_normalized.push_back(sum / np);
    auto& local = r.local_fbc[fi];
    local.assign(np, 0.0);
    for (int j = 0; j < np; ++j) {
      if (window < 0) {
        local[j] = sum;
        continue;
      }
      const int lo = std::max(0, j - window);
      const int hi = std::min(np - 1, j + window);
      for (int k = lo; k <= hi; ++k) local[j] += d[k];
    }
  }
  return r;
}

Tractogram filter_tractogram(const Tractogram& tr, const FbcResult& result,
                             double threshold, FilterMode mode) {
  Tractogram out;
  for (std::size_t fi = 0; fi < tr.fibers.size(); ++fi) {
    double score;
    if (mode == FilterMode::PerFiber) {
      score = result.fiber_fbc_normalized[fi];
    } else {
      score = std::numeric_limits<double>::infinity();
      for (double v : result.local_fbc[fi]) score = std::min(score, v);
    }
    if (score >= threshold) out.fibers.push_back(tr.fibers[fi]);
  }
  return out;
}

}  // namespace stk
