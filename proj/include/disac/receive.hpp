#pragma once

#include <cstdint>
#include <vector>

#include "disac/channel.hpp"
#include "disac/precoding.hpp"

namespace disac {

/// Per-UE received grid split into its physical parts.
struct UeRxDecomposition {
  CGrid desired;  // S_q
  CGrid mui;      // other UEs' streams
  CGrid sensing;  // sensing waveforms leaking into the UE
  CGrid noise;
  CGrid total() const { return desired + mui + sensing + noise; }
};

/// Effective scalar gains g_q^T v seen by UE q on every subcarrier.
struct UeGains {
  std::vector<CMat> comm;  // [q], M x Q: column q' = g_q^T v_q'
  std::vector<CMat> sen;   // [q], M x N_tx: column t = h_{n_t q}^T v_sen_t
};

UeGains ue_gains(const TxGrid& tx, const CommChannel& ch);

/// UE received grids split by source; noise ~ CN(0, sigma2) unless sigma2 == 0.
std::vector<UeRxDecomposition> ue_receive(const TxGrid& tx, const CommChannel& ch, double sigma2,
                                          std::uint64_t noise_seed);

/// Same, reusing gains computed for the same precoders.
std::vector<UeRxDecomposition> ue_receive(const TxGrid& tx, const UeGains& g, double sigma2,
                                          std::uint64_t noise_seed);

/// Received vectors at one Rx AP. Each array is L x (M K), column = row + M k.
struct ApRxGrid {
  int rx = 0;                  // AP index
  std::vector<CMat> sen_by_tx; // [t] sensing echoes of Tx t
  CMat comm;                   // echoes of the communication streams
  CMat noise;
  CMat total() const;
};

std::vector<ApRxGrid> ap_receive(const TxGrid& tx, const SensingChannelFT& h,
                                 const std::vector<int>& rx_set, double sigma2,
                                 std::uint64_t noise_seed);

/// Delay-Doppler channel estimate of one Tx/Rx pair, per component and antenna.
struct ExtractedCir {
  int tx_index = 0;  // position in the Tx set
  int rx = 0;        // AP index
  std::vector<CGrid> desired;    // [u] antenna, M x K
  std::vector<CGrid> sen_int;
  std::vector<CGrid> comm_int;
  std::vector<CGrid> noise;
  std::vector<CGrid> total() const;
};

/// h~ = DD transform of z against the conjugate sensing grid of Tx t, which
/// equals the periodic correlation of X~_t with z~ / sqrt(MK).
CGrid correlate_dd(const CGrid& z_ft, const CGrid& sensing_ft, const GridConfig& grid);

ExtractedCir extract_cir(const ApRxGrid& rx, const TxGrid& tx, int t);

/// Row l of an L x (M K) array reshaped to M x K.
CGrid antenna_grid(const CMat& a, int u, const GridConfig& grid);

}  // namespace disac
