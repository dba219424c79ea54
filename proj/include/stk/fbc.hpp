#pragma once

#include <cstdint>
#include <vector>

#include "stk/kernel.hpp"

// Fiber-to-bundle coherence: the scale-space density of a tractogram
// evaluated at its own points (with antipodal orientation symmetrization),
// summed per fiber and over local windows to score and filter streamlines.

namespace stk {

struct Streamline {
  std::vector<Vec3> points;
  std::vector<Vec3> tangents;  // unit, one per point
};

// Removes consecutive duplicates (tolerance 1e-9) and computes forward
// difference tangents; the last point reuses the previous tangent.
// Throws std::invalid_argument if fewer than 2 distinct points remain.
Streamline make_streamline(std::vector<Vec3> points);

struct Tractogram {
  std::vector<Streamline> fibers;

  std::int64_t n_total() const {
    std::int64_t n = 0;
    for (const auto& f : fibers) n += static_cast<std::int64_t>(f.points.size());
    return n;
  }
};

struct FbcResult {
  std::vector<std::vector<double>> point_density;  // [fiber][point]
  std::vector<std::vector<double>> local_fbc;      // [fiber][point]
  std::vector<double> fiber_fbc;                   // raw per-fiber sums
  std::vector<double> fiber_fbc_normalized;        // fiber_fbc / N_i
};

// Density W(y_a, n_a) = (1/N_tot) sum_b sum_{sigma=+-1} k_new(a; y_b, sigma n_b),
// including b = a, evaluated over unordered point pairs: exactly
// N_tot (N_tot + 1) / 2 pair evaluations (count reported via pair_count).
// Only the NewSection kernel is used; its pair symmetry is what makes the
// reduction valid.
std::vector<std::vector<double>> fiber_density(const Tractogram& tr,
                                               const DiffusionParams& p,
                                               std::uint64_t* pair_count = nullptr);

// window < 0 means "whole fiber"; otherwise local sums over 2*window+1
// points clipped at the fiber ends.
FbcResult fbc_scores(const Tractogram& tr,
                     const std::vector<std::vector<double>>& density,
                     int window);

enum class FilterMode { PerFiber, PerPointMin };

// PerFiber keeps fibers with length-normalized FBC >= threshold;
// PerPointMin uses the fiber's minimum local FBC.
Tractogram filter_tractogram(const Tractogram& tr, const FbcResult& result,
                             double threshold, FilterMode mode);

}  // namespace stk
