#pragma once

#include <utility>
#include <vector>

#include "disac/common.hpp"
#include "disac/grid.hpp"

namespace disac {

struct AccessPoint {
  Vec2 position = Vec2::Zero();
  double orientation = 0.0;  // rad, broadside bearing from +x
  int L = 1;
  double spacing = 0.0;      // m; lambda0/2 by convention
};

struct UserEquipment {
  Vec2 position = Vec2::Zero();
};

struct RegionOfInterest {
  Vec2 center = Vec2::Zero();
  double size_x = 0.0;
  double size_y = 0.0;
  double pitch = 0.0;

  double xmin() const { return center.x() - size_x / 2; }
  double xmax() const { return center.x() + size_x / 2; }
  double ymin() const { return center.y() - size_y / 2; }
  double ymax() const { return center.y() + size_y / 2; }
  bool contains(const Vec2& p) const {
    return p.x() >= xmin() && p.x() <= xmax() && p.y() >= ymin() && p.y() <= ymax();
  }
};

struct Target {
  Vec2 position = Vec2::Zero();
  double rcs = 1.0;    // m^2, sets the reflectivity magnitude
  double phase = 0.0;  // rad, common to every AP pair
};

struct Scenario {
  std::vector<AccessPoint> aps;
  std::vector<UserEquipment> ues;
  RegionOfInterest roi;
  std::vector<Target> targets;
  double f0 = 10e9;                 // Hz
  double noise_psd_dbm_hz = -173.0;
  double P = 0.0;                   // W per subcarrier
  GridConfig grid;
  double eta = 0.0;

  double wavelength() const { return kSpeedOfLight / f0; }
  /// Noise variance per resource bin, shared by UEs and AP receivers.
  double noise_variance() const { return dbm_to_watt(noise_psd_dbm_hz) * grid.delta_f; }
  int N() const { return static_cast<int>(aps.size()); }
  int Q() const { return static_cast<int>(ues.size()); }
};

/// Throws ConfigError when invariants do not hold (Q <= N L, eta in [0,1],
/// positive ROI, consistent array sizes).
void validate(const Scenario& s);

/// sin of the local angle of `point` seen from `ap` (bearing minus orientation).
double local_sin(const AccessPoint& ap, const Vec2& point);

/// [a]_u = exp(-j 2pi u d sin(theta) / lambda0); with d = lambda0/2 this is
/// exp(-j pi u sin(theta)).
CVec steering_vector(const AccessPoint& ap, const Vec2& point, double f0);

double bistatic_delay(const AccessPoint& tx, const AccessPoint& rx, const Vec2& point);

/// Exact min and max of the bistatic delay over the ROI rectangle. The sum of
/// ranges is convex, so the max sits on a corner; the min is |p_tx - p_rx|
/// when the segment between the APs crosses the ROI, else it lies on an edge
/// and is found by golden-section search along each edge.
std::pair<double, double> roi_delay_extrema(const AccessPoint& tx, const AccessPoint& rx,
                                            const RegionOfInterest& roi);

struct PixelGrid {
  int nx = 0;
  int ny = 0;
  std::vector<Vec2> centers;  // row-major: index = iy * nx + ix
};

/// Pixel counts per axis are floor(size/pitch), at least 1; pixels tile the
/// ROI exactly.
PixelGrid roi_pixels(const RegionOfInterest& roi);

/// N APs on a near-square lattice spanning [-half, half]^2 (corners included),
/// each pointing at the origin.
std::vector<AccessPoint> lattice_aps(int N, int L, double half_extent, double f0);

}  // namespace disac
