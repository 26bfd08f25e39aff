#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "disac/grid.hpp"
#include "disac/scenario.hpp"

namespace disac {

struct SensingWaveform {
  CVec delay_seq;    // length M, |.|^2 = M
  CVec doppler_seq;  // length K, |.|^2 = K
  CGrid dd_grid;     // delay_seq * doppler_seq^T
  CGrid ft_grid;     // sqrt(MK) dd_to_ft(dd_grid): unit average power per bin
};

SensingWaveform make_sensing_waveform(const CVec& delay_seq, const CVec& doppler_seq,
                                      const GridConfig& grid);

struct DelaySupport {
  int M = 0;
  /// Delay bins covered by the ROI for the considered pairs, padded by one
  /// bin on each side. Sorted, unwrapped.
  std::vector<int> samples;
  /// Cross-correlation lags (mod M) that must vanish: every difference between
  /// a bin seen by one transmitter and a bin seen by another at a common
  /// receiver. Symmetric under negation, sorted.
  std::vector<int> lags;
  /// Source delay intervals [tau_min, tau_max] per pair, seconds.
  std::vector<std::pair<double, double>> intervals;
};

/// Pairs are every (n, r) with n in tx_set and r in rx_set, including n == r
/// when an AP appears in both.
DelaySupport delay_support(const Scenario& s, const std::vector<int>& tx_set,
                           const std::vector<int>& rx_set);

/// Builds a support directly from a lag set (symmetrized mod M).
DelaySupport support_from_lags(int M, const std::vector<int>& lags);

/// [X]_{i,j} = x[(i - j) mod M].
CMat periodic_correlation_matrix(const CVec& seq);

/// Delay sequences with zero periodic cross-correlation on support.lags for
/// every ordered pair. Throws FeasibilityError when n_seqs > floor(M/|lags|)
/// and RankError when the null space runs out.
std::vector<CVec> design_delay_sequences(int n_seqs, int M, const DelaySupport& support,
                                         std::uint64_t seed);

/// i.i.d. complex Gaussian sequences, each scaled to |.|^2 = M.
std::vector<CVec> random_delay_sequences(int n_seqs, int M, std::uint64_t seed);

/// Zadoff-Chu sequence; K = 1 gives [1]. Root must be coprime with K.
CVec doppler_sequence(int K, int root = 1);

/// Worst |cross-correlation| over the lag set across all ordered pairs.
double max_cross_correlation(const std::vector<CVec>& seqs, const std::vector<int>& lags);

/// Unit-average-power square QAM grids, one per UE. order in {4, 16, 64}.
std::vector<CGrid> qam_symbols(int Q, int M, int K, int order, std::uint64_t seed);

}  // namespace disac
