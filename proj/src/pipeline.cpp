#include "disac/pipeline.hpp"

#include <algorithm>
#include <numeric>

namespace disac {

const char* to_string(WaveformKind k) { return k == WaveformKind::Designed ? "designed" : "random"; }

WaveformKind waveform_kind_from_string(const std::string& s) {
  if (s == "designed") return WaveformKind::Designed;
  if (s == "random" || s == "pseudo-random") return WaveformKind::PseudoRandom;
  throw ConfigError("unknown waveform kind '" + s + "'");
}

const SensingWaveform& WaveformBank::at(int ap) const {
  if (ap < 0 || ap >= static_cast<int>(by_ap.size()) || !by_ap[ap])
    throw ConfigError("waveform bank has no sequence for AP " + std::to_string(ap));
  return *by_ap[ap];
}

std::vector<int> all_aps(int N) {
  std::vector<int> v(N);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<int> complement(int N, const std::vector<int>& set) {
  std::vector<int> out;
  for (int n = 0; n < N; ++n)
    if (std::find(set.begin(), set.end(), n) == set.end()) out.push_back(n);
  return out;
}

WaveformBank bank_from_sequences(const Scenario& s, const std::vector<CVec>& delay_seqs,
                                 const DelaySupport& support, WaveformKind kind) {
  WaveformBank b;
  b.kind = kind;
  b.support = support;
  b.by_ap.resize(s.N());
  const CVec dop = doppler_sequence(s.grid.K, b.doppler_root);
  for (int n = 0; n < s.N() && n < static_cast<int>(delay_seqs.size()); ++n)
    b.by_ap[n] = make_sensing_waveform(delay_seqs[n], dop, s.grid);
  return b;
}

WaveformBank make_waveform_bank(const Scenario& s, WaveformKind kind, std::uint64_t seed,
                                const std::vector<int>& tx_set, const std::vector<int>& rx_set) {
  const int N = s.N();
  const auto all = all_aps(N);
  const DelaySupport full = delay_support(s, all, all);
  if (kind == WaveformKind::PseudoRandom)
    return bank_from_sequences(s, random_delay_sequences(N, s.grid.M, seed), full, kind);
  try {
    return bank_from_sequences(s, design_delay_sequences(N, s.grid.M, full, seed), full, kind);
  } catch (const FeasibilityError&) {
    if (tx_set.empty() || rx_set.empty()) throw;
  } catch (const RankError&) {
    if (tx_set.empty() || rx_set.empty()) throw;
  }
  const DelaySupport part = delay_support(s, tx_set, rx_set);
  const auto seqs = design_delay_sequences(static_cast<int>(tx_set.size()), s.grid.M, part, seed);
  WaveformBank b = bank_from_sequences(s, {}, part, kind);
  b.all_pairs = false;
  const CVec dop = doppler_sequence(s.grid.K, b.doppler_root);
  for (size_t t = 0; t < tx_set.size(); ++t) b.by_ap[tx_set[t]] = make_sensing_waveform(seqs[t], dop, s.grid);
  return b;
}

namespace {

PrecoderBank empty_comm_bank(const Scenario& s, const std::vector<int>& tx_set) {
  PrecoderBank b;
  b.tx_set = tx_set;
  b.L = s.aps.front().L;
  b.Q = 0;
  b.M = s.grid.M;
  b.comm.assign(s.grid.M, CMat(static_cast<long>(tx_set.size()) * b.L, 0));
  return b;
}

}  // namespace

PipelineState simulate(const Scenario& s, const WaveformBank& bank, const PipelineConfig& cfg) {
  validate(s);
  if (cfg.tx_set.empty()) throw ConfigError("simulate: empty Tx set");
  if (cfg.realizations < 1) throw ConfigError("simulate: need at least one symbol realization");
  const GridConfig& g = s.grid;
  PipelineState st;
  st.P = s.P;
  st.sigma2 = s.noise_variance();
  st.MK = g.size();
  st.L = s.aps.front().L;
  st.tx_set = cfg.tx_set;
  st.rx_set = cfg.rx_set;
  const int T = static_cast<int>(cfg.tx_set.size());
  const int Q = s.Q();

  const CommChannel ch = build_comm_channel(s, cfg.clusters, split_seed(cfg.seed, 0xc0));
  PrecoderBank pb = Q > 0 ? build_comm_precoder(ch, cfg.tx_set, cfg.precoder, st.P, st.sigma2)
                          : empty_comm_bank(s, cfg.tx_set);
  pb.sen = build_sensing_precoder(build_roi_channel(s), cfg.tx_set);

  std::vector<const SensingWaveform*> wf;
  for (int n : cfg.tx_set) wf.push_back(&bank.at(n));

  // UE side: ensemble over symbol draws, unit amplitudes.
  TxGrid tx0;
  for (int r = 0; r < cfg.realizations; ++r) {
    TxGrid tx = assemble_tx_amplitudes(pb, qam_symbols(Q, g.M, g.K, cfg.qam_order, split_seed(cfg.seed, 0x51, r)),
                                       wf, 1.0, 1.0, g);
    if (r == 0) {
      st.ue_gains = ue_gains(tx, ch);
      tx0 = tx;
    }
    if (Q == 0) break;
    const auto dec = ue_receive(tx, st.ue_gains, 0.0, 0);
    if (r == 0) st.ue_stats.assign(Q, UeBinStats{});
    for (int q = 0; q < Q; ++q) {
      auto& acc = st.ue_stats[q];
      if (r == 0) {
        acc.desired = dec[q].desired.cwiseAbs2();
        acc.mui = dec[q].mui.cwiseAbs2();
        acc.sensing = dec[q].sensing.cwiseAbs2();
      } else {
        acc.desired += dec[q].desired.cwiseAbs2();
        acc.mui += dec[q].mui.cwiseAbs2();
        acc.sensing += dec[q].sensing.cwiseAbs2();
      }
    }
  }
  for (auto& acc : st.ue_stats) {
    acc.desired /= cfg.realizations;
    acc.mui /= cfg.realizations;
    acc.sensing /= cfg.realizations;
  }
  for (int q = 0; q < Q; ++q) st.se_bound.push_back(dmimo_se_bound(ch, q, st.P, st.sigma2));

  if (cfg.rx_set.empty()) return st;

  // Rx side: one transmission (realization 0) with receiver noise.
  const SensingChannelFT H = build_sensing_channel_ft(s);
  const auto rx = ap_receive(tx0, H, cfg.rx_set, cfg.noise ? st.sigma2 : 0.0, split_seed(cfg.seed, 0xa7));

  // Closed-form ingredients: per-Tx sensing gains toward the first target and
  // per-Tx mean communication leakage toward it.
  std::vector<cd> f_sen(T);
  std::vector<double> f_com(T, 0.0);
  const Target* target = nullptr;
  for (const auto& t : s.targets)
    if (s.roi.contains(t.position)) {
      target = &t;
      break;
    }
  if (target) {
    for (int t = 0; t < T; ++t) {
      const CVec a = steering_vector(s.aps[cfg.tx_set[t]], target->position, s.f0);
      f_sen[t] = (a.transpose() * pb.sen[t])(0, 0);
      for (int q = 0; q < Q; ++q)
        for (int m = 0; m < g.M; ++m) f_com[t] += std::norm((a.transpose() * pb.comm_vec(t, q, m))(0, 0)) / g.M;
    }
  }
  std::vector<std::optional<CGrid>> rho(static_cast<size_t>(T) * T);
  auto xcorr = [&](int t, int t2) -> const CGrid& {
    auto& c = rho[static_cast<size_t>(t) * T + t2];
    if (!c) c = periodic_xcorr_2d(bank.at(cfg.tx_set[t]).dd_grid, bank.at(cfg.tx_set[t2]).dd_grid);
    return *c;
  };
  const ImagingGeometry geo = cfg.imaging ? imaging_geometry(s) : ImagingGeometry{};
  if (cfg.imaging) {
    st.has_image = true;
    st.nx = geo.px.nx;
    st.ny = geo.px.ny;
    const long P = static_cast<long>(geo.px.centers.size());
    st.img_sen = CVec::Zero(P);
    st.img_desired = CVec::Zero(P);
    st.img_com = CVec::Zero(P);
    st.img_noise = CVec::Zero(P);
  }

  for (const auto& z : rx) {
    const int r = z.rx;
    for (int t = 0; t < T; ++t) {
      const int n = cfg.tx_set[t];
      const ExtractedCir cir = extract_cir(z, tx0, t);
      PairState ps;
      ps.tx = n;
      ps.rx = r;
      if (target) {
        const double tau = bistatic_delay(s.aps[n], s.aps[r], target->position);
        const long l = round_half_away(tau / g.delta_tau);
        ps.beta_abs = reflectivity(s, *target, s.aps[n], s.aps[r]);
        if (l >= 0 && l < g.M) {
          const CVec a = steering_vector(s.aps[r], target->position, s.f0);
          auto combine = [&](const std::vector<CGrid>& c) {
            cd acc = 0.0;
            for (int u = 0; u < st.L; ++u) acc += std::conj(a[u]) * c[u](l, 0);
            return acc;
          };
          ps.tap.desired = combine(cir.desired);
          ps.tap.sen_int = combine(cir.sen_int);
          ps.tap.comm_int = combine(cir.comm_int);
          ps.tap.noise_power = cfg.noise ? st.L * static_cast<double>(st.MK) * st.sigma2 : 0.0;
          ps.tap.valid = true;

          auto& cf = ps.closed_form;
          cf.signal = st.MK * std::norm(ps.beta_abs * f_sen[t]);
          for (int t2 = 0; t2 < T; ++t2) {
            const int n2 = cfg.tx_set[t2];
            const double b2 = reflectivity(s, *target, s.aps[n2], s.aps[r]);
            cf.comm_int += b2 * b2 * f_com[t2];
            if (t2 == t) continue;
            const long l2 = round_half_away(bistatic_delay(s.aps[n2], s.aps[r], target->position) / g.delta_tau);
            const long d = ((l - l2) % g.M + g.M) % g.M;
            cf.sen_int += b2 * b2 * std::norm(f_sen[t2]) * std::norm(xcorr(t, t2)(d, 0)) / st.MK;
          }
          cf.noise = cfg.noise ? st.sigma2 / st.L : 0.0;
        }
      }
      st.pairs.push_back(ps);
      if (cfg.imaging) {
        const CMat des = zero_doppler_slice(cir.desired);
        const CMat sen = des + zero_doppler_slice(cir.sen_int);
        const CMat com = zero_doppler_slice(cir.comm_int);
        const CMat noi = zero_doppler_slice(cir.noise);
        st.out_of_support += backproject_into(geo, n, r, {&des, &sen, &com, &noi},
                                              {&st.img_desired, &st.img_sen, &st.img_com, &st.img_noise}, g);
      }
    }
  }
  return st;
}

CVec fused_image(const PipelineState& st, double eta) {
  if (!st.has_image) throw ConfigError("fused_image: imaging was not run");
  const double rp = std::sqrt(st.P);
  return rp * (1.0 - eta) * st.img_sen + rp * eta * st.img_com + st.img_noise;
}

EtaMetrics evaluate(const PipelineState& st, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("evaluate: eta must lie in [0, 1]");
  EtaMetrics r;
  r.eta = eta;
  const double a_com = std::sqrt(st.P) * eta;
  const double a_sen = std::sqrt(st.P) * (1.0 - eta);
  for (size_t q = 0; q < st.ue_stats.size(); ++q) {
    r.se.push_back(spectral_efficiency(st.ue_stats[q], a_com, a_sen, st.sigma2));
    r.se_closed.push_back(spectral_efficiency_closed_form(st.ue_gains, static_cast<int>(q), a_com, a_sen, st.sigma2));
    r.se_bound.push_back(st.se_bound[q]);
  }
  for (const auto& p : st.pairs) {
    if (!p.tap.valid) continue;
    r.sinr_pairs.push_back(sensing_sinr(p.tap, a_com, a_sen));
    r.sinr_cf_pairs.push_back(sensing_sinr_closed_form(p.closed_form, a_com, a_sen));
    r.drn_bound_pairs.push_back(drn_snr_bound(st.P, st.MK, p.beta_abs, st.L, st.L, st.sigma2));
  }
  if (!r.sinr_pairs.empty()) {
    r.sinr_sen_avg_db = mean_db(r.sinr_pairs);
    r.sinr_sen_cf_avg_db = mean_db(r.sinr_cf_pairs);
    r.drn_bound_avg_db = mean_db(r.drn_bound_pairs);
  }
  if (st.has_image) {
    const CVec img = fused_image(st, eta);
    if (img.squaredNorm() > 0) r.entropy = entropy(img);
  }
  return r;
}

}  // namespace disac
