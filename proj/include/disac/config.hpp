#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "disac/pipeline.hpp"

namespace disac {

enum class Mode { DISAC, DMIMO, DRN };
const char* to_string(Mode m);
Mode mode_from_string(const std::string& s);

enum class RxSelection { Auto, Ga, Exhaustive, First };
const char* to_string(RxSelection m);
RxSelection rx_selection_from_string(const std::string& s);

/// Units: Hz, m, dBm, dBm/Hz, rad.
struct ExperimentConfig {
  Mode mode = Mode::DISAC;
  int N = 9;
  int L = 4;
  double area_half_extent = 10.0;  // APs and UEs live in [-a, a]^2
  double f0 = 10e9;
  int K = 4;
  double cp_fraction = 0.0;
  std::vector<int> M_list{512};
  std::vector<double> B_list{100e6};
  double roi_center_x = 0.0, roi_center_y = -5.0;  // clear of the 4, 9 and 16 AP lattices
  double roi_size_x = 5.0, roi_size_y = 5.0;
  double pixel_pitch = 0.0;         // <= 0: lambda0 / 4
  double selection_pitch = 0.0;     // <= 0: lambda0 / 2
  int Q = 2;
  int n_targets = 1;
  bool random_targets = false;      // false: first target at ROI centre
  double target_rcs = 1.0;          // m^2
  double power_ref_dbm = -15.0;     // per subcarrier at power_ref_M
  int power_ref_M = 128;
  double noise_psd_dbm_hz = -173.0;
  std::vector<double> eta_list{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
  std::vector<int> n_rx_list{1, 4};
  PrecoderMode precoder = PrecoderMode::MMSE;
  WaveformKind waveform = WaveformKind::Designed;
  RxSelection rx_selection = RxSelection::Auto;
  int qam_order = 4;
  int clusters = 1;
  int realizations = 64;
  bool noise = true;
  int replicates = 20;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string output_dir = "results";
  bool dump_images = false;

  double pitch() const;
  double sel_pitch() const;
  /// Per-subcarrier power at M subcarriers, P_ref M / M_ref, in W.
  double power_w(int M) const;
};

void check(const ExperimentConfig& c);

nlohmann::json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// AP lattice + ROI without UEs or targets, for one grid point.
Scenario base_scenario(const ExperimentConfig& c, int M, double B);

/// Adds Q UEs uniform in the area outside the ROI and the configured targets.
Scenario randomize(const Scenario& base, const ExperimentConfig& c, std::uint64_t seed);

}  // namespace disac
