#include "disac/imaging.hpp"

namespace disac {

ImagingGeometry imaging_geometry(const Scenario& s) {
  ImagingGeometry g;
  g.px = roi_pixels(s.roi);
  g.f0 = s.f0;
  const double lambda = s.wavelength();
  const long P = static_cast<long>(g.px.centers.size());
  for (const auto& ap : s.aps) {
    Eigen::VectorXd R(P);
    CVec car(P), stp(P);
    for (long i = 0; i < P; ++i) {
      const Vec2 d = g.px.centers[i] - ap.position;
      R[i] = d.norm();
      car[i] = std::polar(1.0, 2 * kPi * R[i] / lambda);
      stp[i] = std::polar(1.0, -2 * kPi * ap.spacing / lambda * local_sin(ap, g.px.centers[i]));
    }
    g.range.push_back(std::move(R));
    g.carrier.push_back(std::move(car));
    g.step.push_back(std::move(stp));
    g.L.push_back(ap.L);
  }
  return g;
}

long backproject_into(const ImagingGeometry& geo, int tx_ap, int rx_ap,
                      const std::vector<const CMat*>& slices, const std::vector<CVec*>& outputs,
                      const GridConfig& grid) {
  if (slices.size() != outputs.size()) throw DimensionError("backproject: slice/output count mismatch");
  const long P = static_cast<long>(geo.px.centers.size());
  const int L = geo.L[rx_ap];
  const int M = grid.M;
  for (const auto* s : slices)
    if (s->rows() != L || s->cols() != M) throw DimensionError("backproject: slice must be L x M");
  for (auto* o : outputs)
    if (o->size() != P) throw DimensionError("backproject: image size mismatch");
  const auto& Rt = geo.range[tx_ap];
  const auto& Rr = geo.range[rx_ap];
  const auto& ct = geo.carrier[tx_ap];
  const auto& cr = geo.carrier[rx_ap];
  const auto& wr = geo.step[rx_ap];
  const double bin_per_m = 1.0 / (kSpeedOfLight * grid.delta_tau);
  long outside = 0;
  for (long i = 0; i < P; ++i) {
    const long bin = round_half_away((Rt[i] + Rr[i]) * bin_per_m);
    if (bin < 0 || bin >= M) {
      ++outside;
      continue;
    }
    const cd phase = ct[i] * cr[i];
    const cd w = std::conj(wr[i]);
    for (size_t c = 0; c < slices.size(); ++c) {
      const CMat& h = *slices[c];
      // a^H h = sum_u conj(w_r)^u h_u, evaluated by Horner's rule.
      cd acc = h(L - 1, bin);
      for (int u = L - 2; u >= 0; --u) acc = acc * w + h(u, bin);
      (*outputs[c])[i] += acc * phase;
    }
  }
  return outside;
}

CMat zero_doppler_slice(const std::vector<CGrid>& per_antenna) {
  if (per_antenna.empty()) throw DimensionError("zero_doppler_slice: no antennas");
  const long M = per_antenna.front().rows();
  CMat s(static_cast<long>(per_antenna.size()), M);
  for (size_t u = 0; u < per_antenna.size(); ++u) s.row(static_cast<long>(u)) = per_antenna[u].col(0).transpose();
  return s;
}

Image backproject_pair(const std::vector<CGrid>& cir, int tx_ap, int rx_ap,
                       const ImagingGeometry& geo, const GridConfig& grid) {
  Image im = Image::zeros(geo.px);
  const CMat slice = zero_doppler_slice(cir);
  im.out_of_support = backproject_into(geo, tx_ap, rx_ap, {&slice}, {&im.pixels}, grid);
  im.pairs.emplace_back(tx_ap, rx_ap);
  return im;
}

Image fuse(const std::vector<Image>& images) {
  if (images.empty()) throw DimensionError("fuse: no images");
  Image out = images.front();
  for (size_t i = 1; i < images.size(); ++i) {
    const Image& im = images[i];
    if (im.nx != out.nx || im.ny != out.ny) throw DimensionError("fuse: pixel grids differ");
    out.pixels += im.pixels;
    out.out_of_support += im.out_of_support;
    out.pairs.insert(out.pairs.end(), im.pairs.begin(), im.pairs.end());
  }
  return out;
}

}  // namespace disac
