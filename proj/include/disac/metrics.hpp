#pragma once

#include <vector>

#include "disac/channel.hpp"
#include "disac/receive.hpp"

namespace disac {

/// Shannon entropy (bits) of |I|^2 / sum |I|^2. Throws UndefinedEntropyError
/// for an all-zero image.
double entropy(const CVec& pixels);

/// Ensemble statistics of one UE's received parts per resource bin.
struct UeBinStats {
  Eigen::MatrixXd desired;  // E|S|^2
  Eigen::MatrixXd mui;      // E|INT_com|^2
  Eigen::MatrixXd sensing;  // E|INT_sen|^2
};

/// Averages |.|^2 of each part over realizations (one decomposition per
/// symbol draw, same UE).
UeBinStats ue_bin_stats(const std::vector<const UeRxDecomposition*>& realizations);

/// mean over bins of log2(1 + E|S|^2 / (E|MUI|^2 + E|SEN|^2 + sigma2)).
double spectral_efficiency(const UeBinStats& st, double sigma2);

/// Same with the three powers given in unit-amplitude form and rescaled:
/// comm parts by a_com^2, sensing by a_sen^2.
double spectral_efficiency(const UeBinStats& unit, double a_com, double a_sen, double sigma2);

/// Closed-form per-subcarrier SINR with desired and MUI coherent and the
/// sensing leakage treated as unit-power noise-like; averaged into an SE.
double spectral_efficiency_closed_form(const UeGains& unit_gains, int q, double a_com,
                                       double a_sen, double sigma2);

/// D-MIMO bound: mean over subcarriers of log2(1 + P sum_n |h_nq[m]|^2 / sigma2),
/// all N APs transmitting to UE q alone.
double dmimo_se_bound(const CommChannel& ch, int q, double P, double sigma2);
double dmimo_snr_bound(const CommChannel& ch, int q, int row, double P, double sigma2);

/// D-RN bound P MK |beta|^2 L_tx L_rx / sigma2: full Tx array gain and full
/// Rx combining gain on a single pair.
double drn_snr_bound(double P, int MK, double beta_abs, int L_tx, int L_rx, double sigma2);

/// Sensing SINR of a pair at its target tap after Rx combining.
struct SensingTap {
  cd desired;       // unit-amplitude a^H S
  cd sen_int;       // unit-amplitude a^H INT_sen
  cd comm_int;      // unit-amplitude a^H INT_com
  double noise_power = 0.0;  // E|a^H noise|^2 = L MK sigma2
  bool valid = false;
};

double sensing_sinr(const SensingTap& t, double a_com, double a_sen);

/// Closed-form sensing SINR of one pair:
///   a_sen^2 MK |beta F|^2 / (a_sen^2 S_int + a_com^2 C_int + sigma2 / L_rx)
/// where S_int = sum_{n' != n} |beta' F'|^2 |rho_nn'|^2 / (MK)^2 MK and
/// C_int = sum_{n'} |beta'|^2 sum_q mean_m |a^T v_n'q[m]|^2.
struct SensingClosedFormTerms {
  double signal = 0.0;  // MK |beta F|^2
  double sen_int = 0.0;
  double comm_int = 0.0;
  double noise = 0.0;   // sigma2 / L_rx
};

double sensing_sinr_closed_form(const SensingClosedFormTerms& t, double a_com, double a_sen);

double mean_db(const std::vector<double>& linear);

}  // namespace disac
