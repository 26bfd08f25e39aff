#include "disac/channel.hpp"

#include "disac/fft.hpp"

namespace disac {

CommChannel build_comm_channel(const Scenario& s, int clusters, std::uint64_t seed,
                               double area_half_extent) {
  if (clusters < 1) throw ConfigError("build_comm_channel: need at least one cluster");
  const double lambda = s.wavelength();
  CommChannel ch;
  ch.N = s.N();
  ch.Q = s.Q();
  ch.L = s.aps.front().L;
  ch.M = s.grid.M;
  ch.paths.resize(static_cast<size_t>(ch.N) * ch.Q);
  ch.h_.resize(ch.paths.size());
  for (int n = 0; n < ch.N; ++n)
    for (int q = 0; q < ch.Q; ++q) {
      Rng rng(split_seed(seed, 1, n, q));
      const AccessPoint& ap = s.aps[n];
      const Vec2& ue = s.ues[q].position;
      auto& paths = ch.paths[static_cast<size_t>(n) * ch.Q + q];
      const double R = (ue - ap.position).norm();
      const double los = lambda / (4 * kPi * R);
      paths.push_back({std::polar(los, uniform(rng, 0, 2 * kPi)), R / kSpeedOfLight,
                       steering_vector(ap, ue, s.f0)});
      for (int c = 1; c < clusters; ++c) {
        const Vec2 sc(uniform(rng, -area_half_extent, area_half_extent),
                      uniform(rng, -area_half_extent, area_half_extent));
        const double att = uniform(rng, kNlosAttenuationMinDb, kNlosAttenuationMaxDb);
        const double amp = los * std::pow(10.0, -att / 20.0);
        const double path_len = (sc - ap.position).norm() + (ue - sc).norm();
        paths.push_back({std::polar(amp, uniform(rng, 0, 2 * kPi)), path_len / kSpeedOfLight,
                         steering_vector(ap, sc, s.f0)});
      }
      CMat h = CMat::Zero(ch.L, ch.M);
      for (int i = 0; i < ch.M; ++i) {
        const double f = s.f0 + s.grid.subcarrier(i) * s.grid.delta_f;
        for (const auto& p : paths) h.col(i) += p.alpha * std::polar(1.0, -2 * kPi * f * p.tau) * p.steering;
      }
      ch.h_[static_cast<size_t>(n) * ch.Q + q] = std::move(h);
    }
  return ch;
}

double reflectivity(const Scenario& s, const Target& t, const AccessPoint& tx,
                    const AccessPoint& rx) {
  const double lambda = s.wavelength();
  const double rt = (t.position - tx.position).norm();
  const double rr = (t.position - rx.position).norm();
  const double k = lambda / (4 * kPi);
  return std::sqrt(4 * kPi * t.rcs) / lambda * k * k / (rt * rr);
}

cd SensingChannelFT::phase(const Term& t, int row) const {
  return std::polar(1.0, -2 * kPi * (f0 + grid.subcarrier(row) * grid.delta_f) * t.tau);
}

CMat SensingChannelFT::matrix(int n, int r, int row) const {
  CMat H = CMat::Zero(L, L);
  for (const auto& t : pair(n, r)) H += t.beta * phase(t, row) * t.a_rx * t.a_tx.transpose();
  return H;
}

SensingChannelFT build_sensing_channel_ft(const Scenario& s) {
  SensingChannelFT h;
  h.N = s.N();
  h.L = s.aps.front().L;
  h.grid = s.grid;
  h.f0 = s.f0;
  h.terms.resize(static_cast<size_t>(h.N) * h.N);
  for (int n = 0; n < h.N; ++n)
    for (int r = 0; r < h.N; ++r)
      for (const auto& t : s.targets) {
        if (!s.roi.contains(t.position)) continue;
        SensingChannelFT::Term term;
        term.beta = std::polar(reflectivity(s, t, s.aps[n], s.aps[r]), t.phase);
        term.tau = bistatic_delay(s.aps[n], s.aps[r], t.position);
        term.a_tx = steering_vector(s.aps[n], t.position, s.f0);
        term.a_rx = steering_vector(s.aps[r], t.position, s.f0);
        h.terms[static_cast<size_t>(n) * h.N + r].push_back(std::move(term));
      }
  return h;
}

std::vector<std::vector<CMat>> build_sensing_channel_dd(const SensingChannelFT& h) {
  const int M = h.grid.M, L = h.L;
  std::vector<std::vector<CMat>> out(h.terms.size());
  for (int n = 0; n < h.N; ++n)
    for (int r = 0; r < h.N; ++r) {
      // Entry-wise inverse DFT along subcarriers: rows = (i,j) entries, cols = m.
      CMat buf(M, L * L);
      for (int row = 0; row < M; ++row) {
        const CMat H = h.matrix(n, r, row);
        for (int e = 0; e < L * L; ++e) buf(row, e) = H(e % L, e / L);
      }
      fft::columns(buf.data(), M, L * L, fft::Sign::Backward);
      buf *= h.grid.delta_f;
      auto& taps = out[static_cast<size_t>(n) * h.N + r];
      taps.assign(M, CMat(L, L));
      for (int l = 0; l < M; ++l)
        for (int e = 0; e < L * L; ++e) taps[l](e % L, e / L) = buf(l, e);
    }
  return out;
}

std::vector<CVec> build_roi_channel(const Scenario& s) {
  const PixelGrid px = roi_pixels(s.roi);
  const double lambda = s.wavelength();
  std::vector<CVec> out;
  for (const auto& ap : s.aps) {
    CVec h = CVec::Zero(ap.L);
    for (const auto& x : px.centers) h += lambda / (4 * kPi * (x - ap.position).norm()) * steering_vector(ap, x, s.f0);
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace disac
