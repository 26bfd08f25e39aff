#pragma once

#include <utility>
#include <vector>

#include "disac/scenario.hpp"

namespace disac {

struct Image {
  int nx = 0, ny = 0;
  CVec pixels;                            // row-major, iy * nx + ix
  std::vector<std::pair<int, int>> pairs; // (tx AP, rx AP) contributing
  long out_of_support = 0;                // pixel lookups outside [0, M-1]

  static Image zeros(const PixelGrid& px) {
    Image im;
    im.nx = px.nx;
    im.ny = px.ny;
    im.pixels = CVec::Zero(static_cast<long>(px.nx) * px.ny);
    return im;
  }
};

/// Per-AP, per-pixel quantities shared by every pair: range, carrier phase
/// exp(+j2pi f0 R/c) and the element phase step exp(-j 2pi d sin(theta)/lambda0).
struct ImagingGeometry {
  PixelGrid px;
  double f0 = 0.0;
  std::vector<Eigen::VectorXd> range;  // [n]
  std::vector<CVec> carrier;           // [n]
  std::vector<CVec> step;              // [n]
  std::vector<int> L;                  // [n]
};

ImagingGeometry imaging_geometry(const Scenario& s);

/// Adds I_nr(x) = a_r^H(x) h~_nr[round(tau_nr(x)/dtau), p=0] exp(+j2pi f0 tau_nr(x))
/// for each slice into the matching output. A slice is the L x M zero-Doppler
/// cut of a CIR (column = delay bin). Returns the out-of-support count.
long backproject_into(const ImagingGeometry& geo, int tx_ap, int rx_ap,
                      const std::vector<const CMat*>& slices, const std::vector<CVec*>& outputs,
                      const GridConfig& grid);

/// Zero-Doppler cut of per-antenna DD grids: L x M.
CMat zero_doppler_slice(const std::vector<CGrid>& per_antenna);

Image backproject_pair(const std::vector<CGrid>& cir, int tx_ap, int rx_ap,
                       const ImagingGeometry& geo, const GridConfig& grid);

/// Elementwise sum in the given order.
Image fuse(const std::vector<Image>& images);

}  // namespace disac
