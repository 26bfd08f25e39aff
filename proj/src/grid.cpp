#include "disac/grid.hpp"

#include "disac/fft.hpp"

namespace disac {
namespace {

void check_same_shape(const CGrid& a, const CGrid& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(what) + ": dimension mismatch");
}

void check_grid(const CGrid& s, const GridConfig& g, const char* what) {
  if (s.rows() != g.M || s.cols() != g.K)
    throw DimensionError(std::string(what) + ": signal is " + std::to_string(s.rows()) + "x" +
                         std::to_string(s.cols()) + ", grid is " + std::to_string(g.M) + "x" +
                         std::to_string(g.K));
}

}  // namespace

GridConfig make_grid(int M, int K, double bandwidth_hz, double cp_fraction) {
  if (M <= 0) throw ConfigError("make_grid: M must be positive");
  if (K <= 0) throw ConfigError("make_grid: K must be positive");
  if (!(bandwidth_hz > 0.0)) throw ConfigError("make_grid: bandwidth must be positive");
  if (!(cp_fraction >= 0.0 && cp_fraction < 1.0))
    throw ConfigError("make_grid: cyclic-prefix fraction must lie in [0, 1)");
  GridConfig g;
  g.M = M;
  g.K = K;
  g.B = bandwidth_hz;
  g.delta_f = bandwidth_hz / M;
  g.T = (1.0 + cp_fraction) / g.delta_f;
  g.delta_tau = 1.0 / bandwidth_hz;
  g.delta_nu = 1.0 / (K * g.T);
  return g;
}

CGrid ft_to_dd(const CGrid& signal, const GridConfig& grid) {
  check_grid(signal, grid, "ft_to_dd");
  CGrid out = signal;
  fft::columns(out.data(), grid.M, grid.K, fft::Sign::Backward);  // e^{+j2pi m l/M}
  fft::rows(out.data(), grid.M, grid.K, fft::Sign::Forward);      // e^{-j2pi k p/K}
  return out;
}

CGrid dd_to_ft(const CGrid& signal, const GridConfig& grid) {
  check_grid(signal, grid, "dd_to_ft");
  CGrid out = signal;
  fft::columns(out.data(), grid.M, grid.K, fft::Sign::Forward);
  fft::rows(out.data(), grid.M, grid.K, fft::Sign::Backward);
  out /= static_cast<double>(grid.M) * grid.K;
  return out;
}

CGrid periodic_xcorr_2d(const CGrid& a, const CGrid& b) {
  check_same_shape(a, b, "periodic_xcorr_2d");
  const int M = static_cast<int>(a.rows());
  const int K = static_cast<int>(a.cols());
  // Correlation theorem: r = IDFT( conj(DFT a) .* DFT b ).
  CGrid fa = a, fb = b;
  fft::columns(fa.data(), M, K, fft::Sign::Forward);
  fft::rows(fa.data(), M, K, fft::Sign::Forward);
  fft::columns(fb.data(), M, K, fft::Sign::Forward);
  fft::rows(fb.data(), M, K, fft::Sign::Forward);
  CGrid r = fa.conjugate().cwiseProduct(fb);
  fft::columns(r.data(), M, K, fft::Sign::Backward);
  fft::rows(r.data(), M, K, fft::Sign::Backward);
  r /= static_cast<double>(M) * K;
  return r;
}

CGrid periodic_xcorr_2d_direct(const CGrid& a, const CGrid& b) {
  check_same_shape(a, b, "periodic_xcorr_2d_direct");
  const long M = a.rows();
  const long K = a.cols();
  CGrid r = CGrid::Zero(M, K);
  for (long l = 0; l < M; ++l)
    for (long p = 0; p < K; ++p) {
      cd acc = 0.0;
      for (long l2 = 0; l2 < M; ++l2)
        for (long p2 = 0; p2 < K; ++p2)
          acc += std::conj(a(l2, p2)) * b((l + l2) % M, (p + p2) % K);
      r(l, p) = acc;
    }
  return r;
}

CVec periodic_xcorr(const CVec& x, const CVec& y) {
  if (x.size() != y.size()) throw DimensionError("periodic_xcorr: length mismatch");
  const int M = static_cast<int>(x.size());
  CVec fx = x, fy = y;
  fft::transform(fx.data(), M, 1, 1, M, fft::Sign::Forward);
  fft::transform(fy.data(), M, 1, 1, M, fft::Sign::Forward);
  CVec r = fx.conjugate().cwiseProduct(fy);
  fft::transform(r.data(), M, 1, 1, M, fft::Sign::Backward);
  r /= static_cast<double>(M);
  return r;
}

}  // namespace disac
