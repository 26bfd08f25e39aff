#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "disac/imaging.hpp"
#include "disac/metrics.hpp"
#include "disac/precoding.hpp"
#include "disac/waveform.hpp"

namespace disac {

enum class WaveformKind { Designed, PseudoRandom };

const char* to_string(WaveformKind k);
WaveformKind waveform_kind_from_string(const std::string& s);

/// Sensing waveforms indexed by AP. The bank is designed once for every AP
/// acting as both transmitter and receiver, so any Tx subset inherits the
/// orthogonality it needs. When that is infeasible the design falls back to
/// the requested Tx/Rx split and only the Tx entries are filled.
struct WaveformBank {
  WaveformKind kind = WaveformKind::Designed;
  DelaySupport support;
  bool all_pairs = true;
  int doppler_root = 1;
  std::vector<std::optional<SensingWaveform>> by_ap;

  const SensingWaveform& at(int ap) const;
};

WaveformBank make_waveform_bank(const Scenario& s, WaveformKind kind, std::uint64_t seed,
                                const std::vector<int>& tx_set = {},
                                const std::vector<int>& rx_set = {});

/// Assembles a bank from given delay sequences, one per AP.
WaveformBank bank_from_sequences(const Scenario& s, const std::vector<CVec>& delay_seqs,
                                 const DelaySupport& support, WaveformKind kind);

struct PipelineConfig {
  std::vector<int> tx_set;
  std::vector<int> rx_set;
  PrecoderMode precoder = PrecoderMode::MMSE;
  int qam_order = 4;
  int clusters = 1;
  int realizations = 64;  // symbol draws behind the SE expectations
  bool noise = true;
  bool imaging = true;
  std::uint64_t seed = 1;
};

struct PairState {
  int tx = 0, rx = 0;  // AP indices
  SensingTap tap;
  SensingClosedFormTerms closed_form;
  double beta_abs = 0.0;
};

/// Everything computed once at unit amplitudes; any eta is then a rescaling:
/// sensing parts by sqrt(P)(1-eta), communication parts by sqrt(P) eta.
struct PipelineState {
  double P = 0.0;
  double sigma2 = 0.0;
  int MK = 0;
  int L = 0;
  std::vector<int> tx_set, rx_set;
  std::vector<UeBinStats> ue_stats;  // [q], unit amplitudes
  UeGains ue_gains;                  // unit amplitudes
  std::vector<double> se_bound;      // [q]
  std::vector<PairState> pairs;
  bool has_image = false;
  int nx = 0, ny = 0;
  CVec img_sen, img_com, img_noise;  // unit amplitudes; img_sen includes cross-Tx leakage
  CVec img_desired;                  // own-waveform echoes only (the SAF)
  long out_of_support = 0;
};

PipelineState simulate(const Scenario& s, const WaveformBank& bank, const PipelineConfig& cfg);

struct EtaMetrics {
  double eta = 0.0;
  std::vector<double> se;           // empirical, per UE
  std::vector<double> se_closed;    // closed form, per UE
  std::vector<double> se_bound;     // D-MIMO bound, per UE
  std::vector<double> sinr_pairs;   // empirical, linear, per pair
  std::vector<double> sinr_cf_pairs;
  std::vector<double> drn_bound_pairs;
  double sinr_sen_avg_db = std::numeric_limits<double>::quiet_NaN();
  double sinr_sen_cf_avg_db = std::numeric_limits<double>::quiet_NaN();
  double drn_bound_avg_db = std::numeric_limits<double>::quiet_NaN();
  double entropy = std::numeric_limits<double>::quiet_NaN();
};

EtaMetrics evaluate(const PipelineState& st, double eta);

/// Fused image at a given eta.
CVec fused_image(const PipelineState& st, double eta);

/// Scenario helpers.
std::vector<int> all_aps(int N);
std::vector<int> complement(int N, const std::vector<int>& set);

}  // namespace disac
