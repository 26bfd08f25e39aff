#pragma once

#include <cstdint>
#include <vector>

#include "disac/scenario.hpp"

namespace disac {

/// Wideband AP->UE channels. h(n, q) is L x M, column = grid row index.
struct CommChannel {
  int N = 0, Q = 0, L = 0, M = 0;
  struct Path {
    cd alpha;          // complex gain incl. random phase
    double tau = 0.0;  // s
    CVec steering;     // a(theta)
  };
  std::vector<std::vector<Path>> paths;  // [n * Q + q]
  std::vector<CMat> h_;                  // [n * Q + q], L x M

  const CMat& h(int n, int q) const { return h_[static_cast<size_t>(n) * Q + q]; }
  CVec h(int n, int q, int row) const { return h(n, q).col(row); }
};

/// NLOS scatterer attenuation range, dB below the LOS amplitude.
inline constexpr double kNlosAttenuationMinDb = 6.0;
inline constexpr double kNlosAttenuationMaxDb = 12.0;

/// Path 0 is LOS with alpha = lambda0 / (4 pi R) and random phase; paths 1..C-1
/// bounce off scatterers uniform over `area` with an extra U[6,12] dB loss.
CommChannel build_comm_channel(const Scenario& s, int clusters, std::uint64_t seed,
                               double area_half_extent = 10.0);

/// Bistatic reflectivity magnitude: sqrt(4 pi rcs)/lambda0 (lambda0/4pi)^2/(R_tx R_rx).
double reflectivity(const Scenario& s, const Target& t, const AccessPoint& tx,
                    const AccessPoint& rx);

/// H_nr[m] = sum_u beta_nr,u a(theta_r,u) a^T(theta_n,u) exp(-j2pi (f0 + m df) tau_nr,u),
/// an L x L map from transmitted vector to received vector. Stored as its
/// rank-one terms.
struct SensingChannelFT {
  struct Term {
    cd beta;
    double tau = 0.0;
    CVec a_tx;
    CVec a_rx;
  };
  int N = 0, L = 0;
  GridConfig grid;
  double f0 = 0.0;
  std::vector<std::vector<Term>> terms;  // [n * N + r]

  const std::vector<Term>& pair(int n, int r) const { return terms[static_cast<size_t>(n) * N + r]; }
  /// exp(-j2pi (f0 + m df) tau) for the signed subcarrier at `row`.
  cd phase(const Term& t, int row) const;
  CMat matrix(int n, int r, int row) const;
};

SensingChannelFT build_sensing_channel_ft(const Scenario& s);

/// Delay-domain taps H~_nr[l] = df sum_m H_nr[m] exp(+j2pi m l / M), l = 0..M-1.
/// Result indexed [n * N + r][l].
std::vector<std::vector<CMat>> build_sensing_channel_dd(const SensingChannelFT& h);

/// Fictitious LOS channel to the whole ROI: h_n = sum_x lambda0/(4pi|x-p_n|) a(theta_n(x)).
std::vector<CVec> build_roi_channel(const Scenario& s);

}  // namespace disac
