#pragma once

#include <doctest.h>

#include "disac/common.hpp"
#include "disac/scenario.hpp"

namespace testutil {

using namespace disac;

inline CMat random_matrix(long rows, long cols, std::uint64_t seed) {
  Rng rng(seed);
  CMat m(rows, cols);
  for (long j = 0; j < cols; ++j)
    for (long i = 0; i < rows; ++i) m(i, j) = complex_gaussian(rng);
  return m;
}

inline double rel_err(const CMat& a, const CMat& b) { return (a - b).norm() / std::max(b.norm(), 1e-300); }

inline AccessPoint ap_at(double x, double y, int L, double f0 = 10e9, double orientation = 0.0) {
  AccessPoint ap;
  ap.position = Vec2(x, y);
  ap.orientation = orientation;
  ap.L = L;
  ap.spacing = kSpeedOfLight / f0 / 2;
  return ap;
}

/// Orientation that points `ap` at `p`.
inline double facing(const Vec2& from, const Vec2& p) {
  const Vec2 d = p - from;
  return std::atan2(d.y(), d.x());
}

/// A small scenario: APs on a lattice, ROI in front of them, no UEs or targets.
inline Scenario small_scenario(int N, int L, int M, int K, double B, double roi_size = 2.0) {
  Scenario s;
  s.f0 = 10e9;
  s.aps = lattice_aps(N, L, 10.0, s.f0);
  s.roi.center = Vec2(0.0, -5.0);
  s.roi.size_x = roi_size;
  s.roi.size_y = roi_size;
  s.roi.pitch = roi_size / 20;
  s.grid = make_grid(M, K, B);
  s.P = dbm_to_watt(-15.0);
  return s;
}

}  // namespace testutil
