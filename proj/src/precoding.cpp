#include "disac/precoding.hpp"

namespace disac {

const char* to_string(PrecoderMode m) { return m == PrecoderMode::MR ? "MR" : "MMSE"; }

PrecoderMode precoder_mode_from_string(const std::string& s) {
  if (s == "MR" || s == "mr") return PrecoderMode::MR;
  if (s == "MMSE" || s == "mmse") return PrecoderMode::MMSE;
  throw ConfigError("unknown precoder mode '" + s + "'");
}

CMat composite_channel(const CommChannel& ch, const std::vector<int>& tx_set, int row) {
  CMat G(static_cast<long>(tx_set.size()) * ch.L, ch.Q);
  for (size_t t = 0; t < tx_set.size(); ++t)
    for (int q = 0; q < ch.Q; ++q) G.block(static_cast<long>(t) * ch.L, q, ch.L, 1) = ch.h(tx_set[t], q).col(row);
  return G;
}

PrecoderBank build_comm_precoder(const CommChannel& ch, const std::vector<int>& tx_set,
                                 PrecoderMode mode, double P, double sigma2) {
  if (ch.Q < 1) throw ConfigError("build_comm_precoder: no UEs");
  if (tx_set.empty()) throw ConfigError("build_comm_precoder: empty Tx set");
  PrecoderBank b;
  b.tx_set = tx_set;
  b.L = ch.L;
  b.Q = ch.Q;
  b.M = ch.M;
  b.mode = mode;
  b.comm.resize(ch.M);
  for (int row = 0; row < ch.M; ++row) {
    const CMat G = composite_channel(ch, tx_set, row);
    CMat V = G.conjugate();
    if (mode == PrecoderMode::MMSE) {
      CMat A = (G.adjoint() * G).conjugate();
      A.diagonal().array() += sigma2 / P;
      Eigen::PartialPivLU<CMat> lu(A);
      const double det = std::abs(lu.determinant());
      if (!std::isfinite(det) || det == 0.0) throw NumericError("build_comm_precoder: singular Gram matrix");
      V = V * lu.inverse();
    }
    for (int q = 0; q < ch.Q; ++q) {
      const double nrm = V.col(q).norm();
      if (nrm == 0.0) throw NumericError("build_comm_precoder: zero composite channel column");
      V.col(q) /= nrm;
    }
    b.comm[row] = std::move(V);
  }
  return b;
}

std::vector<CVec> build_sensing_precoder(const std::vector<CVec>& roi_channel,
                                         const std::vector<int>& tx_set) {
  double norm2 = 0.0;
  for (int n : tx_set) norm2 += roi_channel.at(n).squaredNorm();
  if (norm2 == 0.0) throw NumericError("build_sensing_precoder: zero ROI channel");
  std::vector<CVec> out;
  for (int n : tx_set) out.push_back(roi_channel[n].conjugate() / std::sqrt(norm2));
  return out;
}

CMat TxGrid::emitted(int t) const {
  const int M = grid.M, K = grid.K, L = precoders.L;
  CMat s = CMat::Zero(L, static_cast<long>(M) * K);
  for (int k = 0; k < K; ++k)
    for (int m = 0; m < M; ++m) {
      auto col = s.col(m + static_cast<long>(M) * k);
      for (int q = 0; q < precoders.Q; ++q) col += amp_com * symbols[q](m, k) * precoders.comm_vec(t, q, m);
      col += amp_sen * sensing_ft[t](m, k) * precoders.sen[t];
    }
  return s;
}

TxGrid assemble_tx_amplitudes(const PrecoderBank& precoders, const std::vector<CGrid>& symbols,
                              const std::vector<const SensingWaveform*>& waveforms, double amp_com,
                              double amp_sen, const GridConfig& grid) {
  if (static_cast<int>(symbols.size()) != precoders.Q)
    throw DimensionError("assemble_tx: symbol grids do not match the UE count");
  if (waveforms.size() != precoders.tx_set.size())
    throw DimensionError("assemble_tx: one sensing waveform per Tx AP required");
  for (const auto& x : symbols)
    if (x.rows() != grid.M || x.cols() != grid.K) throw DimensionError("assemble_tx: symbol grid size");
  TxGrid tx;
  tx.grid = grid;
  tx.precoders = precoders;
  tx.symbols = symbols;
  for (const auto* w : waveforms) {
    if (!w || w->ft_grid.rows() != grid.M || w->ft_grid.cols() != grid.K)
      throw DimensionError("assemble_tx: sensing waveform size");
    tx.sensing_ft.push_back(w->ft_grid);
  }
  tx.amp_com = amp_com;
  tx.amp_sen = amp_sen;
  return tx;
}

TxGrid assemble_tx(const PrecoderBank& precoders, const std::vector<CGrid>& symbols,
                   const std::vector<const SensingWaveform*>& waveforms, double eta, double P,
                   const GridConfig& grid) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("assemble_tx: eta must lie in [0, 1]");
  return assemble_tx_amplitudes(precoders, symbols, waveforms, std::sqrt(P) * eta,
                                std::sqrt(P) * (1.0 - eta), grid);
}

}  // namespace disac
