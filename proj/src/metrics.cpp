#include "disac/metrics.hpp"

#include <numeric>

namespace disac {

double entropy(const CVec& pixels) {
  const double total = pixels.squaredNorm();
  if (!(total > 0.0)) throw UndefinedEntropyError("entropy: image is identically zero");
  double e = 0.0;
  for (long i = 0; i < pixels.size(); ++i) {
    const double p = std::norm(pixels[i]) / total;
    if (p > 0.0) e -= p * std::log2(p);
  }
  return std::max(0.0, e);
}

UeBinStats ue_bin_stats(const std::vector<const UeRxDecomposition*>& realizations) {
  if (realizations.empty()) throw ConfigError("ue_bin_stats: no realizations");
  const auto& f = *realizations.front();
  UeBinStats st;
  st.desired = Eigen::MatrixXd::Zero(f.desired.rows(), f.desired.cols());
  st.mui = st.desired;
  st.sensing = st.desired;
  for (const auto* r : realizations) {
    st.desired += r->desired.cwiseAbs2();
    st.mui += r->mui.cwiseAbs2();
    st.sensing += r->sensing.cwiseAbs2();
  }
  const double n = static_cast<double>(realizations.size());
  st.desired /= n;
  st.mui /= n;
  st.sensing /= n;
  return st;
}

double spectral_efficiency(const UeBinStats& st, double sigma2) {
  return spectral_efficiency(st, 1.0, 1.0, sigma2);
}

double spectral_efficiency(const UeBinStats& unit, double a_com, double a_sen, double sigma2) {
  const double c2 = a_com * a_com, s2 = a_sen * a_sen;
  const auto sinr = (c2 * unit.desired.array()) /
                    (c2 * unit.mui.array() + s2 * unit.sensing.array() + sigma2);
  return (1.0 + sinr).log().mean() / std::log(2.0);
}

double spectral_efficiency_closed_form(const UeGains& g, int q, double a_com, double a_sen,
                                       double sigma2) {
  const CMat& c = g.comm.at(q);
  const CMat& s = g.sen.at(q);
  const long M = c.rows();
  double acc = 0.0;
  for (long m = 0; m < M; ++m) {
    const double des = a_com * a_com * std::norm(c(m, q));
    const double mui = a_com * a_com * (c.row(m).squaredNorm() - std::norm(c(m, q)));
    const double sen = a_sen * a_sen * s.row(m).squaredNorm();
    acc += std::log2(1.0 + des / (mui + sen + sigma2));
  }
  return acc / M;
}

double dmimo_snr_bound(const CommChannel& ch, int q, int row, double P, double sigma2) {
  double g = 0.0;
  for (int n = 0; n < ch.N; ++n) g += ch.h(n, q).col(row).squaredNorm();
  return P * g / sigma2;
}

double dmimo_se_bound(const CommChannel& ch, int q, double P, double sigma2) {
  double acc = 0.0;
  for (int row = 0; row < ch.M; ++row) acc += std::log2(1.0 + dmimo_snr_bound(ch, q, row, P, sigma2));
  return acc / ch.M;
}

double drn_snr_bound(double P, int MK, double beta_abs, int L_tx, int L_rx, double sigma2) {
  return P * MK * beta_abs * beta_abs * L_tx * L_rx / sigma2;
}

double sensing_sinr(const SensingTap& t, double a_com, double a_sen) {
  const double sig = a_sen * a_sen * std::norm(t.desired);
  const double den = a_sen * a_sen * std::norm(t.sen_int) + a_com * a_com * std::norm(t.comm_int) + t.noise_power;
  return den > 0 ? sig / den : 0.0;
}

double sensing_sinr_closed_form(const SensingClosedFormTerms& t, double a_com, double a_sen) {
  const double den = a_sen * a_sen * t.sen_int + a_com * a_com * t.comm_int + t.noise;
  return den > 0 ? a_sen * a_sen * t.signal / den : 0.0;
}

double mean_db(const std::vector<double>& linear) {
  if (linear.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double m = std::accumulate(linear.begin(), linear.end(), 0.0) / linear.size();
  return to_db(m);
}

}  // namespace disac
