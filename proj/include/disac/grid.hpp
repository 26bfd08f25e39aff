#pragma once

#include "disac/common.hpp"

namespace disac {

/// Complex M x K grid. Rows are subcarriers (FT) or delay bins (DD), columns
/// are OFDM symbols (FT) or Doppler bins (DD).
///
/// Storage is in DFT order along both axes: row i holds subcarrier
/// m = i for i < M/2 and m = i - M for i >= M/2; column j holds Doppler bin
/// p = j for j < K/2 and p = j - K for j >= K/2. Delay bins and OFDM symbols
/// are stored in natural order. Use the GridConfig accessors to translate.
using CGrid = Eigen::MatrixXcd;

struct GridConfig {
  int M = 0;              // subcarriers / delay bins
  int K = 0;              // OFDM symbols / Doppler bins
  double delta_f = 0.0;   // Hz
  double T = 0.0;         // symbol duration incl. cyclic prefix, s
  double B = 0.0;         // Hz, equal to M * delta_f
  double delta_tau = 0.0; // s, 1/B
  double delta_nu = 0.0;  // Hz, 1/(K T)

  int size() const { return M * K; }

  /// Signed subcarrier index m in [-M/2, M/2-1] stored at row `row`.
  int subcarrier(int row) const { return row < (M + 1) / 2 ? row : row - M; }
  int row_of_subcarrier(int m) const { return ((m % M) + M) % M; }

  /// Signed Doppler index p in [-K/2, K/2-1] stored at column `col`.
  int doppler(int col) const { return col < (K + 1) / 2 ? col : col - K; }
  int col_of_doppler(int p) const { return ((p % K) + K) % K; }
};

/// Builds the FT/DD grid pair. Throws ConfigError on non-positive M, K, B or
/// a cyclic-prefix fraction outside [0, 1).
GridConfig make_grid(int M, int K, double bandwidth_hz, double cp_fraction = 0.0);

/// z~[l,p] = sum_m sum_k z[m,k] e^{+j2pi m l/M} e^{-j2pi k p/K} (unnormalized).
CGrid ft_to_dd(const CGrid& signal, const GridConfig& grid);

/// X[m,k] = 1/(MK) sum_l sum_p X~[l,p] e^{-j2pi m l/M} e^{+j2pi k p/K};
/// exact inverse of ft_to_dd. Energy bookkeeping: ||ft_to_dd(x)||^2 = MK ||x||^2.
CGrid dd_to_ft(const CGrid& signal, const GridConfig& grid);

/// 2D periodic cross-correlation
///   {a (x) b}[l,p] = sum_{l',p'} conj(a[l',p']) b[(l+l') mod M, (p+p') mod K].
/// Lag (0,0) of a (x) a equals sum |a|^2. Evaluated through FFTs.
CGrid periodic_xcorr_2d(const CGrid& a, const CGrid& b);

/// Same quantity by direct quadruple loop. Reference implementation for tests.
CGrid periodic_xcorr_2d_direct(const CGrid& a, const CGrid& b);

/// 1D periodic cross-correlation r[d] = sum_a conj(x[a]) y[(a+d) mod M].
CVec periodic_xcorr(const CVec& x, const CVec& y);

}  // namespace disac
