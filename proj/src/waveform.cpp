#include "disac/waveform.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace disac {

SensingWaveform make_sensing_waveform(const CVec& delay_seq, const CVec& doppler_seq,
                                      const GridConfig& grid) {
  if (delay_seq.size() != grid.M || doppler_seq.size() != grid.K)
    throw DimensionError("make_sensing_waveform: sequence lengths do not match the grid");
  SensingWaveform w;
  w.delay_seq = delay_seq;
  w.doppler_seq = doppler_seq;
  w.dd_grid = delay_seq * doppler_seq.transpose();
  w.ft_grid = std::sqrt(static_cast<double>(grid.size())) * dd_to_ft(w.dd_grid, grid);
  return w;
}

namespace {

std::vector<int> symmetrize(int M, const std::set<int>& raw) {
  std::set<int> s;
  for (int d : raw) {
    const int a = ((d % M) + M) % M;
    s.insert(a);
    s.insert((M - a) % M);
  }
  return {s.begin(), s.end()};
}

}  // namespace

DelaySupport delay_support(const Scenario& s, const std::vector<int>& tx_set,
                           const std::vector<int>& rx_set) {
  if (tx_set.empty() || rx_set.empty()) throw ConfigError("delay_support: empty pair set");
  const int M = s.grid.M;
  const double dt = s.grid.delta_tau;
  DelaySupport sup;
  sup.M = M;
  // bins[t][r]: padded bin interval of tx_set[t] -> rx_set[r]
  std::vector<std::vector<std::pair<int, int>>> bins(tx_set.size());
  std::set<int> samples;
  for (size_t t = 0; t < tx_set.size(); ++t)
    for (int r : rx_set) {
      const auto [lo, hi] = roi_delay_extrema(s.aps.at(tx_set[t]), s.aps.at(r), s.roi);
      sup.intervals.emplace_back(lo, hi);
      const int a = static_cast<int>(round_half_away(lo / dt)) - 1;
      const int b = static_cast<int>(round_half_away(hi / dt)) + 1;
      bins[t].emplace_back(a, b);
      for (int l = a; l <= b; ++l) samples.insert(l);
    }
  sup.samples.assign(samples.begin(), samples.end());
  std::set<int> lags;
  for (size_t r = 0; r < rx_set.size(); ++r)
    for (size_t t = 0; t < tx_set.size(); ++t)
      for (size_t t2 = 0; t2 < tx_set.size(); ++t2) {
        if (t == t2) continue;
        const auto [a, b] = bins[t][r];
        const auto [a2, b2] = bins[t2][r];
        for (int d = a - b2; d <= b - a2; ++d) lags.insert(d);
      }
  sup.lags = symmetrize(M, lags);
  return sup;
}

DelaySupport support_from_lags(int M, const std::vector<int>& lags) {
  DelaySupport sup;
  sup.M = M;
  sup.samples = lags;
  sup.lags = symmetrize(M, std::set<int>(lags.begin(), lags.end()));
  return sup;
}

CMat periodic_correlation_matrix(const CVec& seq) {
  const long M = seq.size();
  CMat X(M, M);
  for (long i = 0; i < M; ++i)
    for (long j = 0; j < M; ++j) X(i, j) = seq[((i - j) % M + M) % M];
  return X;
}

namespace {

CVec random_cn(int M, Rng& rng) {
  CVec v(M);
  for (int i = 0; i < M; ++i) v[i] = complex_gaussian(rng);
  return v;
}

CVec cyclic_shift(const CVec& x, int d) {
  const int M = static_cast<int>(x.size());
  CVec y(M);
  for (int j = 0; j < M; ++j) y[j] = x[((j - d) % M + M) % M];
  return y;
}

}  // namespace

std::vector<CVec> design_delay_sequences(int n_seqs, int M, const DelaySupport& support,
                                         std::uint64_t seed) {
  if (n_seqs < 1) throw ConfigError("design_delay_sequences: n_seqs must be positive");
  if (M < 1) throw ConfigError("design_delay_sequences: M must be positive");
  const std::vector<int> lags = symmetrize(M, std::set<int>(support.lags.begin(), support.lags.end()));
  const int nl = static_cast<int>(lags.size());
  if (nl > 0 && n_seqs > M / nl)
    throw FeasibilityError("design_delay_sequences: " + std::to_string(n_seqs) +
                           " sequences exceed the bound floor(M/|lags|) = floor(" +
                           std::to_string(M) + "/" + std::to_string(nl) +
                           ") = " + std::to_string(M / nl));
  Rng rng(split_seed(seed, 0x5e9));
  std::vector<CVec> out;
  const double target = std::sqrt(static_cast<double>(M));
  CVec first = random_cn(M, rng);
  out.push_back(first * (target / first.norm()));

  // Orthonormal basis of the span of all shifted prior sequences; the next
  // sequence is a random vector projected onto its orthogonal complement.
  CMat basis(M, 0);
  auto project_out = [&](CMat& W) {
    for (int pass = 0; pass < 2; ++pass)
      if (basis.cols() > 0) W -= basis * (basis.adjoint() * W);
  };
  for (int n = 1; n < n_seqs; ++n) {
    if (nl > 0) {
      CMat W(M, nl);
      for (int c = 0; c < nl; ++c) W.col(c) = cyclic_shift(out.back(), lags[c]);
      const double smax = Eigen::BDCSVD<CMat>(W).singularValues()(0);
      project_out(W);
      Eigen::BDCSVD<CMat> svd(W, Eigen::ComputeThinU);
      const auto& sv = svd.singularValues();
      int keep = 0;
      while (keep < sv.size() && sv(keep) > 1e-10 * smax) ++keep;
      CMat grown(M, basis.cols() + keep);
      grown << basis, svd.matrixU().leftCols(keep);
      basis = std::move(grown);
    }
    if (basis.cols() >= M)
      throw RankError("design_delay_sequences: null space is empty at sequence " + std::to_string(n + 1));
    CMat y = random_cn(M, rng);
    const double before = y.norm();
    project_out(y);
    if (y.norm() < 1e-10 * before)
      throw RankError("design_delay_sequences: null-space projection vanished at sequence " +
                      std::to_string(n + 1));
    out.push_back(y.col(0) * (target / y.norm()));
  }
  return out;
}

std::vector<CVec> random_delay_sequences(int n_seqs, int M, std::uint64_t seed) {
  Rng rng(split_seed(seed, 0x7a4d));
  std::vector<CVec> out;
  for (int n = 0; n < n_seqs; ++n) {
    CVec v = random_cn(M, rng);
    out.push_back(v * (std::sqrt(static_cast<double>(M)) / v.norm()));
  }
  return out;
}

CVec doppler_sequence(int K, int root) {
  if (K < 1) throw ConfigError("doppler_sequence: K must be positive");
  if (K == 1) return CVec::Ones(1);
  if (root <= 0 || std::gcd(root, K) != 1)
    throw ConfigError("doppler_sequence: root " + std::to_string(root) + " is not coprime with K = " +
                      std::to_string(K));
  CVec z(K);
  for (int n = 0; n < K; ++n) {
    const double e = (K % 2 == 0) ? static_cast<double>(n) * n : static_cast<double>(n) * (n + 1);
    z[n] = std::polar(1.0, -kPi * root * std::fmod(e, 2.0 * K) / K);
  }
  return z;
}

double max_cross_correlation(const std::vector<CVec>& seqs, const std::vector<int>& lags) {
  double worst = 0.0;
  for (size_t a = 0; a < seqs.size(); ++a)
    for (size_t b = 0; b < seqs.size(); ++b) {
      if (a == b) continue;
      const CVec r = periodic_xcorr(seqs[a], seqs[b]);
      const long M = r.size();
      for (int d : lags) worst = std::max(worst, std::abs(r[((d % M) + M) % M]));
    }
  return worst;
}

std::vector<CGrid> qam_symbols(int Q, int M, int K, int order, std::uint64_t seed) {
  if (order != 4 && order != 16 && order != 64)
    throw ConfigError("qam_symbols: order must be 4, 16 or 64");
  const int side = static_cast<int>(std::lround(std::sqrt(order)));
  const double scale = 1.0 / std::sqrt(2.0 * (order - 1) / 3.0);
  std::vector<CGrid> out;
  for (int q = 0; q < Q; ++q) {
    Rng rng(split_seed(seed, 0x9a3, q));
    std::uniform_int_distribution<int> pick(0, side - 1);
    CGrid g(M, K);
    for (int k = 0; k < K; ++k)
      for (int m = 0; m < M; ++m) {
        const int re = 2 * pick(rng) - (side - 1);
        const int im = 2 * pick(rng) - (side - 1);
        g(m, k) = cd(re, im) * scale;
      }
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace disac
