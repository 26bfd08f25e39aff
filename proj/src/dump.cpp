#include "disac/dump.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace disac {

using nlohmann::json;

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

void write_row(std::ostream& out, const cd* v, long n, long stride = 1) {
  char buf[64];
  for (long i = 0; i < n; ++i) {
    const cd x = v[i * stride];
    std::snprintf(buf, sizeof buf, "%s%.17g %.17g", i ? " " : "", x.real(), x.imag());
    out << buf;
  }
  out << '\n';
}

CVec parse_row(const std::string& line, const std::string& path) {
  std::istringstream in(line);
  std::vector<double> v;
  double x;
  while (in >> x) v.push_back(x);
  if (v.size() % 2) throw IoError(path + ": odd number of values in a row");
  CVec r(static_cast<long>(v.size() / 2));
  for (long i = 0; i < r.size(); ++i) r[i] = cd(v[2 * i], v[2 * i + 1]);
  return r;
}

json read_header(std::ifstream& in, const std::string& path) {
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + ": empty file");
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw IoError(path + ": bad header: " + e.what());
  }
}

}  // namespace

void write_image(const std::string& path, const CVec& pixels, int nx, int ny,
                 const RegionOfInterest& roi, const std::vector<std::pair<int, int>>& pairs) {
  if (pixels.size() != static_cast<long>(nx) * ny) throw DimensionError("write_image: pixel count mismatch");
  auto out = open_out(path);
  json h{{"kind", "image"},
         {"nx", nx},
         {"ny", ny},
         {"x_bounds_m", {roi.xmin(), roi.xmax()}},
         {"y_bounds_m", {roi.ymin(), roi.ymax()}},
         {"pitch_m", roi.pitch},
         {"pairs", pairs}};
  out << h.dump() << '\n';
  for (int iy = 0; iy < ny; ++iy) write_row(out, pixels.data() + static_cast<long>(iy) * nx, nx);
  if (!out) throw IoError("write failed: " + path);
}

ImageDump read_image(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  const json h = read_header(in, path);
  ImageDump d;
  d.nx = h.at("nx").get<int>();
  d.ny = h.at("ny").get<int>();
  d.pixels.resize(static_cast<long>(d.nx) * d.ny);
  std::string line;
  for (int iy = 0; iy < d.ny; ++iy) {
    if (!std::getline(in, line)) throw IoError(path + ": truncated image");
    const CVec row = parse_row(line, path);
    if (row.size() != d.nx) throw IoError(path + ": row length mismatch");
    d.pixels.segment(static_cast<long>(iy) * d.nx, d.nx) = row;
  }
  return d;
}

void write_waveforms(const std::string& path, const WaveformBank& bank, const GridConfig& grid) {
  std::vector<int> aps;
  for (size_t n = 0; n < bank.by_ap.size(); ++n)
    if (bank.by_ap[n]) aps.push_back(static_cast<int>(n));
  auto out = open_out(path);
  json h{{"kind", "waveforms"},
         {"M", grid.M},
         {"K", grid.K},
         {"N", aps.size()},
         {"aps", aps},
         {"waveform", to_string(bank.kind)},
         {"doppler_root", bank.doppler_root},
         {"lags", bank.support.lags},
         {"samples", bank.support.samples}};
  out << h.dump() << '\n';
  for (int n : aps) write_row(out, bank.at(n).delay_seq.data(), grid.M);
  for (int n : aps) write_row(out, bank.at(n).doppler_seq.data(), grid.K);
  if (!out) throw IoError("write failed: " + path);
}

WaveformDump read_waveforms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  const json h = read_header(in, path);
  WaveformDump d;
  d.M = h.at("M").get<int>();
  d.K = h.at("K").get<int>();
  d.N = h.at("N").get<int>();
  d.support.M = d.M;
  d.support.lags = h.at("lags").get<std::vector<int>>();
  d.support.samples = h.at("samples").get<std::vector<int>>();
  std::string line;
  for (int i = 0; i < 2 * d.N; ++i) {
    if (!std::getline(in, line)) throw IoError(path + ": truncated waveform file");
    CVec row = parse_row(line, path);
    if (i < d.N) {
      if (row.size() != d.M) throw IoError(path + ": delay sequence length mismatch");
      d.delay.push_back(std::move(row));
    } else {
      if (row.size() != d.K) throw IoError(path + ": Doppler sequence length mismatch");
      d.doppler.push_back(std::move(row));
    }
  }
  return d;
}

}  // namespace disac
