#include "disac/config.hpp"

#include <algorithm>
#include <fstream>

namespace disac {

using nlohmann::json;

const char* to_string(Mode m) {
  switch (m) {
    case Mode::DISAC: return "DISAC";
    case Mode::DMIMO: return "DMIMO";
    case Mode::DRN: return "DRN";
  }
  return "?";
}

Mode mode_from_string(const std::string& s) {
  if (s == "DISAC") return Mode::DISAC;
  if (s == "DMIMO") return Mode::DMIMO;
  if (s == "DRN") return Mode::DRN;
  throw ConfigError("unknown mode '" + s + "' (DISAC, DMIMO, DRN)");
}

const char* to_string(RxSelection m) {
  switch (m) {
    case RxSelection::Auto: return "auto";
    case RxSelection::Ga: return "ga";
    case RxSelection::Exhaustive: return "exhaustive";
    case RxSelection::First: return "first";
  }
  return "?";
}

RxSelection rx_selection_from_string(const std::string& s) {
  if (s == "auto") return RxSelection::Auto;
  if (s == "ga") return RxSelection::Ga;
  if (s == "exhaustive") return RxSelection::Exhaustive;
  if (s == "first") return RxSelection::First;
  throw ConfigError("unknown rx_selection '" + s + "' (auto, ga, exhaustive, first)");
}

double ExperimentConfig::pitch() const { return pixel_pitch > 0 ? pixel_pitch : kSpeedOfLight / f0 / 4; }
double ExperimentConfig::sel_pitch() const {
  return selection_pitch > 0 ? selection_pitch : kSpeedOfLight / f0 / 2;
}
double ExperimentConfig::power_w(int M) const {
  return dbm_to_watt(power_ref_dbm) * M / static_cast<double>(power_ref_M);
}

void check(const ExperimentConfig& c) {
  if (c.N < 2) throw ConfigError("config: N must be at least 2");
  if (c.N > 63) throw ConfigError("config: N above 63 is not supported");
  if (c.L < 1) throw ConfigError("config: L must be positive");
  if (c.K < 1) throw ConfigError("config: K must be positive");
  if (c.M_list.empty() || c.B_list.empty() || c.eta_list.empty())
    throw ConfigError("config: sweep lists must be non-empty");
  if (c.mode == Mode::DISAC && c.n_rx_list.empty()) throw ConfigError("config: n_rx list must be non-empty");
  for (double e : c.eta_list)
    if (!(e >= 0 && e <= 1)) throw ConfigError("config: eta values must lie in [0, 1]");
  for (int n : c.n_rx_list)
    if (n < 1 || n >= c.N) throw ConfigError("config: n_rx values must lie in [1, N-1]");
  if (c.Q < 0 || c.Q > c.N * c.L) throw ConfigError("config: need 0 <= Q <= N*L");
  if (c.mode == Mode::DMIMO && c.Q < 1) throw ConfigError("config: DMIMO mode needs at least one UE");
  if (c.n_targets < 0) throw ConfigError("config: n_targets must be non-negative");
  if (c.replicates < 1) throw ConfigError("config: replicates must be positive");
  if (c.threads < 1) throw ConfigError("config: threads must be positive");
  if (c.realizations < 1) throw ConfigError("config: realizations must be positive");
  if (!(c.roi_size_x > 0 && c.roi_size_y > 0)) throw ConfigError("config: ROI size must be positive");
}

json to_json(const ExperimentConfig& c) {
  return json{
      {"mode", to_string(c.mode)},
      {"N", c.N},
      {"L", c.L},
      {"area_half_extent_m", c.area_half_extent},
      {"f0_hz", c.f0},
      {"K", c.K},
      {"cp_fraction", c.cp_fraction},
      {"M", c.M_list},
      {"bandwidth_hz", c.B_list},
      {"roi", {{"center_m", {c.roi_center_x, c.roi_center_y}}, {"size_m", {c.roi_size_x, c.roi_size_y}},
               {"pixel_pitch_m", c.pixel_pitch}, {"selection_pitch_m", c.selection_pitch}}},
      {"Q", c.Q},
      {"targets", {{"count", c.n_targets}, {"random", c.random_targets}, {"rcs_m2", c.target_rcs}}},
      {"power_ref_dbm", c.power_ref_dbm},
      {"power_ref_M", c.power_ref_M},
      {"noise_psd_dbm_hz", c.noise_psd_dbm_hz},
      {"eta", c.eta_list},
      {"n_rx", c.n_rx_list},
      {"precoder", to_string(c.precoder)},
      {"waveform", to_string(c.waveform)},
      {"rx_selection", to_string(c.rx_selection)},
      {"qam_order", c.qam_order},
      {"clusters", c.clusters},
      {"realizations", c.realizations},
      {"noise", c.noise},
      {"replicates", c.replicates},
      {"seed", c.seed},
      {"threads", c.threads},
      {"output_dir", c.output_dir},
      {"dump_images", c.dump_images},
  };
}

namespace {

template <class T>
void get(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) {
    try {
      out = it->get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
    }
  }
}

template <class T>
void get_list(const json& j, const char* key, std::vector<T>& out) {
  if (auto it = j.find(key); it != j.end()) {
    if (it->is_array())
      get(j, key, out);
    else
      out = {it->get<T>()};
  }
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  static const std::vector<std::string> known{
      "mode", "N", "L", "area_half_extent_m", "f0_hz", "K", "cp_fraction", "M", "bandwidth_hz", "roi", "Q",
      "targets", "power_ref_dbm", "power_ref_M", "noise_psd_dbm_hz", "eta", "n_rx", "precoder", "waveform",
      "rx_selection", "qam_order", "clusters", "realizations", "noise", "replicates", "seed", "threads",
      "output_dir", "dump_images"};
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end()) throw ConfigError("config: unknown key '" + k + "'");
  ExperimentConfig c;
  std::string s;
  if (j.contains("mode")) {
    get(j, "mode", s);
    c.mode = mode_from_string(s);
  }
  get(j, "N", c.N);
  get(j, "L", c.L);
  get(j, "area_half_extent_m", c.area_half_extent);
  get(j, "f0_hz", c.f0);
  get(j, "K", c.K);
  get(j, "cp_fraction", c.cp_fraction);
  get_list(j, "M", c.M_list);
  get_list(j, "bandwidth_hz", c.B_list);
  if (auto it = j.find("roi"); it != j.end()) {
    std::vector<double> v;
    if (it->contains("center_m")) {
      get(*it, "center_m", v);
      if (v.size() != 2) throw ConfigError("config: roi.center_m needs two values");
      c.roi_center_x = v[0];
      c.roi_center_y = v[1];
    }
    if (it->contains("size_m")) {
      get(*it, "size_m", v);
      if (v.size() != 2) throw ConfigError("config: roi.size_m needs two values");
      c.roi_size_x = v[0];
      c.roi_size_y = v[1];
    }
    get(*it, "pixel_pitch_m", c.pixel_pitch);
    get(*it, "selection_pitch_m", c.selection_pitch);
  }
  get(j, "Q", c.Q);
  if (auto it = j.find("targets"); it != j.end()) {
    get(*it, "count", c.n_targets);
    get(*it, "random", c.random_targets);
    get(*it, "rcs_m2", c.target_rcs);
  }
  get(j, "power_ref_dbm", c.power_ref_dbm);
  get(j, "power_ref_M", c.power_ref_M);
  get(j, "noise_psd_dbm_hz", c.noise_psd_dbm_hz);
  get_list(j, "eta", c.eta_list);
  get_list(j, "n_rx", c.n_rx_list);
  if (j.contains("precoder")) {
    get(j, "precoder", s);
    c.precoder = precoder_mode_from_string(s);
  }
  if (j.contains("waveform")) {
    get(j, "waveform", s);
    c.waveform = waveform_kind_from_string(s);
  }
  if (j.contains("rx_selection")) {
    get(j, "rx_selection", s);
    c.rx_selection = rx_selection_from_string(s);
  }
  get(j, "qam_order", c.qam_order);
  get(j, "clusters", c.clusters);
  get(j, "realizations", c.realizations);
  get(j, "noise", c.noise);
  get(j, "replicates", c.replicates);
  get(j, "seed", c.seed);
  get(j, "threads", c.threads);
  get(j, "output_dir", c.output_dir);
  get(j, "dump_images", c.dump_images);
  check(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return config_from_json(j);
}

Scenario base_scenario(const ExperimentConfig& c, int M, double B) {
  Scenario s;
  s.f0 = c.f0;
  s.aps = lattice_aps(c.N, c.L, c.area_half_extent, c.f0);
  s.roi.center = Vec2(c.roi_center_x, c.roi_center_y);
  s.roi.size_x = c.roi_size_x;
  s.roi.size_y = c.roi_size_y;
  s.roi.pitch = c.pitch();
  s.noise_psd_dbm_hz = c.noise_psd_dbm_hz;
  s.grid = make_grid(M, c.K, B, c.cp_fraction);
  s.P = c.power_w(M);
  return s;
}

Scenario randomize(const Scenario& base, const ExperimentConfig& c, std::uint64_t seed) {
  Scenario s = base;
  Rng rng(split_seed(seed, 0x5c));
  const double a = c.area_half_extent;
  s.ues.clear();
  for (int q = 0; q < c.Q; ++q) {
    Vec2 p;
    int guard = 0;
    do {
      p = Vec2(uniform(rng, -a, a), uniform(rng, -a, a));
      if (++guard > 100000) throw GeometryError("randomize: ROI covers the deployment area");
    } while (s.roi.contains(p) || std::any_of(s.aps.begin(), s.aps.end(), [&](const AccessPoint& ap) {
               return (ap.position - p).norm() < 1e-3;
             }));
    s.ues.push_back({p});
  }
  s.targets.clear();
  for (int u = 0; u < c.n_targets; ++u) {
    Target t;
    t.rcs = c.target_rcs;
    t.phase = uniform(rng, 0, 2 * kPi);
    if (c.random_targets || u > 0)
      t.position = Vec2(uniform(rng, s.roi.xmin(), s.roi.xmax()), uniform(rng, s.roi.ymin(), s.roi.ymax()));
    else
      t.position = s.roi.center;
    s.targets.push_back(t);
  }
  return s;
}

}  // namespace disac
