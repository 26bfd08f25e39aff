#pragma once

#include <vector>

#include "disac/channel.hpp"
#include "disac/waveform.hpp"

namespace disac {

enum class PrecoderMode { MR, MMSE };

const char* to_string(PrecoderMode m);
PrecoderMode precoder_mode_from_string(const std::string& s);

/// Stacked composite channel G[m] over the Tx set: rows t*L .. t*L+L-1 hold
/// h_{tx_set[t], q}[m], column q per UE.
CMat composite_channel(const CommChannel& ch, const std::vector<int>& tx_set, int row);

struct PrecoderBank {
  std::vector<int> tx_set;
  int L = 0, Q = 0, M = 0;
  PrecoderMode mode = PrecoderMode::MMSE;
  std::vector<CMat> comm;  // [row], (N_tx L) x Q, unit-norm columns
  std::vector<CVec> sen;   // [t], L; stacked over t has unit norm

  int n_tx() const { return static_cast<int>(tx_set.size()); }
  auto comm_vec(int t, int q, int row) const { return comm[row].block(t * L, q, L, 1); }
};

/// Per subcarrier: MR V = G*, MMSE V = G* (G^T G* + sigma2/P I)^-1, which
/// inverts the effective channel G^T V seen by y = g^T v. Columns are then
/// scaled to unit norm so each UE stream carries power P at eta = 1.
PrecoderBank build_comm_precoder(const CommChannel& ch, const std::vector<int>& tx_set,
                                 PrecoderMode mode, double P, double sigma2);

/// v_sen = conj(g_ROI) / |g_ROI|, stacked over the Tx set.
std::vector<CVec> build_sensing_precoder(const std::vector<CVec>& roi_channel,
                                         const std::vector<int>& tx_set);

/// Emitted grids of the superposition
///   s_n[m,k] = amp_com sum_q v_nq[m] X_q[m,k] + amp_sen v_sen_n X_n,sen[m,k].
/// Holds the parts unscaled so the split can be revisited without rebuilding.
struct TxGrid {
  GridConfig grid;
  PrecoderBank precoders;
  std::vector<CGrid> symbols;     // [q]
  std::vector<CGrid> sensing_ft;  // [t], FT-domain sensing grids
  double amp_com = 0.0;
  double amp_sen = 0.0;

  /// L x (M K) array, column = row + M k.
  CMat emitted(int t) const;
};

/// Standard split: amp_com = sqrt(P) eta, amp_sen = sqrt(P) (1 - eta).
/// `waveforms` is indexed like precoders.tx_set.
TxGrid assemble_tx(const PrecoderBank& precoders, const std::vector<CGrid>& symbols,
                   const std::vector<const SensingWaveform*>& waveforms, double eta, double P,
                   const GridConfig& grid);

TxGrid assemble_tx_amplitudes(const PrecoderBank& precoders, const std::vector<CGrid>& symbols,
                              const std::vector<const SensingWaveform*>& waveforms, double amp_com,
                              double amp_sen, const GridConfig& grid);

}  // namespace disac
