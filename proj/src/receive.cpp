#include "disac/receive.hpp"

namespace disac {

UeGains ue_gains(const TxGrid& tx, const CommChannel& ch) {
  const auto& pb = tx.precoders;
  const int M = tx.grid.M, Q = pb.Q, T = pb.n_tx();
  UeGains g;
  for (int q = 0; q < Q; ++q) {
    CMat c(M, Q), s(M, T);
    for (int row = 0; row < M; ++row) {
      const CMat G = composite_channel(ch, pb.tx_set, row);
      c.row(row) = G.col(q).transpose() * pb.comm[row];
      for (int t = 0; t < T; ++t) s(row, t) = ch.h(pb.tx_set[t], q).col(row).transpose() * pb.sen[t];
    }
    g.comm.push_back(std::move(c));
    g.sen.push_back(std::move(s));
  }
  return g;
}

std::vector<UeRxDecomposition> ue_receive(const TxGrid& tx, const CommChannel& ch, double sigma2,
                                          std::uint64_t noise_seed) {
  if (ch.Q != tx.precoders.Q || ch.M != tx.grid.M)
    throw DimensionError("ue_receive: channel does not match the Tx grid");
  return ue_receive(tx, ue_gains(tx, ch), sigma2, noise_seed);
}

std::vector<UeRxDecomposition> ue_receive(const TxGrid& tx, const UeGains& g, double sigma2,
                                          std::uint64_t noise_seed) {
  const int M = tx.grid.M, K = tx.grid.K, Q = tx.precoders.Q, T = tx.precoders.n_tx();
  std::vector<UeRxDecomposition> out(Q);
  for (int q = 0; q < Q; ++q) {
    auto& d = out[q];
    d.desired = CGrid::Zero(M, K);
    d.mui = CGrid::Zero(M, K);
    d.sensing = CGrid::Zero(M, K);
    d.noise = CGrid::Zero(M, K);
    Rng rng(split_seed(noise_seed, 0xe1, q));
    for (int k = 0; k < K; ++k)
      for (int m = 0; m < M; ++m) {
        d.desired(m, k) = tx.amp_com * g.comm[q](m, q) * tx.symbols[q](m, k);
        for (int q2 = 0; q2 < Q; ++q2)
          if (q2 != q) d.mui(m, k) += tx.amp_com * g.comm[q](m, q2) * tx.symbols[q2](m, k);
        for (int t = 0; t < T; ++t) d.sensing(m, k) += tx.amp_sen * g.sen[q](m, t) * tx.sensing_ft[t](m, k);
        if (sigma2 > 0) d.noise(m, k) = complex_gaussian(rng, sigma2);
      }
  }
  return out;
}

CMat ApRxGrid::total() const {
  CMat z = comm + noise;
  for (const auto& s : sen_by_tx) z += s;
  return z;
}

std::vector<ApRxGrid> ap_receive(const TxGrid& tx, const SensingChannelFT& h,
                                 const std::vector<int>& rx_set, double sigma2,
                                 std::uint64_t noise_seed) {
  const auto& pb = tx.precoders;
  const int M = tx.grid.M, K = tx.grid.K, L = pb.L, T = pb.n_tx(), Q = pb.Q;
  const long MK = static_cast<long>(M) * K;
  std::vector<ApRxGrid> out;
  for (int r : rx_set) {
    ApRxGrid z;
    z.rx = r;
    z.sen_by_tx.assign(T, CMat::Zero(L, MK));
    z.comm = CMat::Zero(L, MK);
    z.noise = CMat::Zero(L, MK);
    for (int t = 0; t < T; ++t)
      for (const auto& term : h.pair(pb.tx_set[t], r)) {
        const cd fs = term.a_tx.transpose() * pb.sen[t];
        for (int m = 0; m < M; ++m) {
          const cd bph = term.beta * h.phase(term, m);
          const cd cs = tx.amp_sen * bph * fs;
          CVec cq(Q);
          for (int q = 0; q < Q; ++q) cq[q] = tx.amp_com * bph * (term.a_tx.transpose() * pb.comm_vec(t, q, m))(0, 0);
          for (int k = 0; k < K; ++k) {
            const long c = m + static_cast<long>(M) * k;
            z.sen_by_tx[t].col(c) += cs * tx.sensing_ft[t](m, k) * term.a_rx;
            cd acc = 0.0;
            for (int q = 0; q < Q; ++q) acc += cq[q] * tx.symbols[q](m, k);
            z.comm.col(c) += acc * term.a_rx;
          }
        }
      }
    if (sigma2 > 0) {
      Rng rng(split_seed(noise_seed, 0xa9, r));
      for (long c = 0; c < MK; ++c)
        for (int u = 0; u < L; ++u) z.noise(u, c) = complex_gaussian(rng, sigma2);
    }
    out.push_back(std::move(z));
  }
  return out;
}

std::vector<CGrid> ExtractedCir::total() const {
  std::vector<CGrid> out;
  for (size_t u = 0; u < desired.size(); ++u) out.push_back(desired[u] + sen_int[u] + comm_int[u] + noise[u]);
  return out;
}

CGrid antenna_grid(const CMat& a, int u, const GridConfig& grid) {
  CGrid g(grid.M, grid.K);
  for (int k = 0; k < grid.K; ++k)
    for (int m = 0; m < grid.M; ++m) g(m, k) = a(u, m + static_cast<long>(grid.M) * k);
  return g;
}

CGrid correlate_dd(const CGrid& z_ft, const CGrid& sensing_ft, const GridConfig& grid) {
  return ft_to_dd(z_ft.cwiseProduct(sensing_ft.conjugate()), grid);
}

ExtractedCir extract_cir(const ApRxGrid& rx, const TxGrid& tx, int t) {
  if (t < 0 || t >= tx.precoders.n_tx()) throw ConfigError("extract_cir: waveform index is not a Tx AP");
  const GridConfig& g = tx.grid;
  const CGrid& x = tx.sensing_ft[t];
  ExtractedCir cir;
  cir.tx_index = t;
  cir.rx = rx.rx;
  CMat interf = CMat::Zero(rx.comm.rows(), rx.comm.cols());
  for (size_t t2 = 0; t2 < rx.sen_by_tx.size(); ++t2)
    if (static_cast<int>(t2) != t) interf += rx.sen_by_tx[t2];
  for (int u = 0; u < tx.precoders.L; ++u) {
    cir.desired.push_back(correlate_dd(antenna_grid(rx.sen_by_tx[t], u, g), x, g));
    cir.sen_int.push_back(correlate_dd(antenna_grid(interf, u, g), x, g));
    cir.comm_int.push_back(correlate_dd(antenna_grid(rx.comm, u, g), x, g));
    cir.noise.push_back(correlate_dd(antenna_grid(rx.noise, u, g), x, g));
  }
  return cir;
}

}  // namespace disac
