#include "disac/scenario.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace disac {

void validate(const Scenario& s) {
  if (s.aps.empty()) throw ConfigError("scenario: no access points");
  if (!(s.f0 > 0)) throw ConfigError("scenario: f0 must be positive");
  if (!(s.eta >= 0.0 && s.eta <= 1.0)) throw ConfigError("scenario: eta must lie in [0, 1]");
  const int L = s.aps.front().L;
  for (const auto& ap : s.aps) {
    if (ap.L < 1) throw ConfigError("scenario: every AP needs at least one antenna");
    if (ap.L != L) throw ConfigError("scenario: all APs must share the same array size");
  }
  if (s.Q() > s.N() * L) throw ConfigError("scenario: Q must not exceed N*L");
  if (!(s.roi.size_x > 0 && s.roi.size_y > 0 && s.roi.pitch > 0))
    throw ConfigError("scenario: ROI size and pitch must be positive");
  if (s.grid.M <= 0 || s.grid.K <= 0) throw ConfigError("scenario: grid not initialized");
  for (int n = 0; n < s.N(); ++n)
    if (s.roi.contains(s.aps[n].position))
      throw GeometryError("scenario: AP " + std::to_string(n) + " lies inside the ROI");
}

double local_sin(const AccessPoint& ap, const Vec2& point) {
  const Vec2 d = point - ap.position;
  if (d.norm() == 0.0) throw GeometryError("steering: point coincides with the AP position");
  return std::sin(std::atan2(d.y(), d.x()) - ap.orientation);
}

CVec steering_vector(const AccessPoint& ap, const Vec2& point, double f0) {
  const double s = local_sin(ap, point);
  const double lambda = kSpeedOfLight / f0;
  const double k = -2.0 * kPi * ap.spacing / lambda * s;
  CVec a(ap.L);
  for (int u = 0; u < ap.L; ++u) a[u] = std::polar(1.0, k * u);
  return a;
}

double bistatic_delay(const AccessPoint& tx, const AccessPoint& rx, const Vec2& point) {
  return ((point - tx.position).norm() + (rx.position - point).norm()) / kSpeedOfLight;
}

namespace {

// Liang-Barsky: does segment a->b touch the rectangle?
bool segment_hits_rect(const Vec2& a, const Vec2& b, const RegionOfInterest& r) {
  double t0 = 0.0, t1 = 1.0;
  const Vec2 d = b - a;
  const std::array<double, 4> p{-d.x(), d.x(), -d.y(), d.y()};
  const std::array<double, 4> q{a.x() - r.xmin(), r.xmax() - a.x(), a.y() - r.ymin(),
                                r.ymax() - a.y()};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0)
      t0 = std::max(t0, t);
    else
      t1 = std::min(t1, t);
    if (t0 > t1) return false;
  }
  return true;
}

double golden_min(const auto& f, double lo, double hi) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-12 * (1.0 + std::abs(a)); ++it) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - g * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + g * (b - a); fd = f(d);
    }
  }
  return std::min({f(lo), f(hi), f(0.5 * (a + b))});
}

}  // namespace

std::pair<double, double> roi_delay_extrema(const AccessPoint& tx, const AccessPoint& rx,
                                            const RegionOfInterest& roi) {
  const Vec2& a = tx.position;
  const Vec2& b = rx.position;
  auto range_sum = [&](const Vec2& x) { return (x - a).norm() + (x - b).norm(); };

  const std::array<Vec2, 4> corners{Vec2(roi.xmin(), roi.ymin()), Vec2(roi.xmax(), roi.ymin()),
                                    Vec2(roi.xmax(), roi.ymax()), Vec2(roi.xmin(), roi.ymax())};
  double dmax = 0.0;
  for (const auto& c : corners) dmax = std::max(dmax, range_sum(c));

  double dmin;
  if (segment_hits_rect(a, b, roi)) {
    dmin = (a - b).norm();
  } else {
    dmin = std::numeric_limits<double>::infinity();
    for (int e = 0; e < 4; ++e) {
      const Vec2 p0 = corners[e], p1 = corners[(e + 1) % 4];
      dmin = std::min(dmin, golden_min([&](double t) { return range_sum(p0 + t * (p1 - p0)); },
                                       0.0, 1.0));
    }
  }
  return {dmin / kSpeedOfLight, dmax / kSpeedOfLight};
}

PixelGrid roi_pixels(const RegionOfInterest& roi) {
  if (!(roi.size_x > 0 && roi.size_y > 0 && roi.pitch > 0))
    throw ConfigError("roi_pixels: ROI size and pitch must be positive");
  PixelGrid g;
  g.nx = std::max(1, static_cast<int>(std::floor(roi.size_x / roi.pitch + 1e-9)));
  g.ny = std::max(1, static_cast<int>(std::floor(roi.size_y / roi.pitch + 1e-9)));
  const double sx = roi.size_x / g.nx, sy = roi.size_y / g.ny;
  g.centers.reserve(static_cast<size_t>(g.nx) * g.ny);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix)
      g.centers.emplace_back(roi.xmin() + (ix + 0.5) * sx, roi.ymin() + (iy + 0.5) * sy);
  return g;
}

std::vector<AccessPoint> lattice_aps(int N, int L, double half_extent, double f0) {
  if (N < 1) throw ConfigError("lattice_aps: N must be positive");
  if (L < 1) throw ConfigError("lattice_aps: L must be positive");
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(N)) - 1e-12));
  const int rows = (N + cols - 1) / cols;
  auto coord = [&](int i, int n) {
    return n == 1 ? 0.0 : -half_extent + 2.0 * half_extent * i / (n - 1);
  };
  const double lambda = kSpeedOfLight / f0;
  std::vector<AccessPoint> aps;
  for (int r = 0; r < rows && static_cast<int>(aps.size()) < N; ++r)
    for (int c = 0; c < cols && static_cast<int>(aps.size()) < N; ++c) {
      AccessPoint ap;
      ap.position = Vec2(coord(c, cols), coord(r, rows));
      ap.orientation = ap.position.norm() > 0 ? std::atan2(-ap.position.y(), -ap.position.x()) : 0.0;
      ap.L = L;
      ap.spacing = lambda / 2;
      aps.push_back(ap);
    }
  return aps;
}

}  // namespace disac
