#pragma once

#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "disac/config.hpp"
#include "disac/selection.hpp"

namespace disac {

inline constexpr const char* kLibraryVersion = "1.0.0";
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ResultRow {
  std::string mode;
  int N = 0, L = 0, M = 0, K = 0;
  double B = 0.0;
  int n_rx = 0;
  double eta = 0.0;
  int replicate = 0;
  std::uint64_t seed = 0;
  std::vector<int> tx_set, rx_set;
  double se_mean = kNaN;          // bits/s/Hz, mean over UEs
  double se_closed_mean = kNaN;
  double se_bound_mean = kNaN;
  double sinr_sen_db = kNaN;      // mean over pairs (linear), in dB
  double sinr_sen_cf_db = kNaN;
  double drn_bound_db = kNaN;
  double entropy = kNaN;          // bits
  std::string status = "ok";
};

std::string csv_header();
std::string to_csv(const ResultRow& r);

struct ImageRecord {
  std::string name;
  CVec pixels;
  int nx = 0, ny = 0;
  RegionOfInterest roi;
  std::vector<std::pair<int, int>> pairs;
};

struct SweepResult {
  std::vector<ResultRow> rows;
  std::vector<ImageRecord> images;
  nlohmann::json points = nlohmann::json::array();  // per grid point: support, selections
  double wall_time_s = 0.0;
};

/// Runs every grid point (M, B) x replicate x N_rx x eta. Replicates run on
/// `threads` workers with seeds derived from (master seed, point, replicate);
/// rows are emitted in a fixed order regardless of scheduling.
SweepResult run_sweep(const ExperimentConfig& c);

/// Writes results.csv, manifest.json and (optionally) image dumps into dir.
void emit_results(const SweepResult& r, const ExperimentConfig& c, const std::string& dir);

/// "auto" selection enumerates up to this many allocations and runs the GA
/// beyond it.
inline constexpr double kAutoExhaustiveLimit = 1e4;

/// Chooses the Rx set for a grid point. Returns the allocation and a record
/// of how it was found.
struct RxChoice {
  std::vector<int> tx_set, rx_set;
  double saf_entropy = kNaN;
  std::string method;
};
RxChoice choose_rx(const ExperimentConfig& c, EntropyOracle* oracle, int n_rx, std::uint64_t seed);

}  // namespace disac
