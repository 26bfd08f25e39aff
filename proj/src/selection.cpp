#include "disac/selection.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace disac {

Allocation Allocation::from_rx_mask(int N, std::uint64_t rx_mask) {
  Allocation a;
  a.b_rx.resize(N);
  a.b_tx.resize(N);
  for (int n = 0; n < N; ++n) {
    a.b_rx[n] = (rx_mask >> n) & 1U;
    a.b_tx[n] = !a.b_rx[n];
  }
  return a;
}

std::uint64_t Allocation::rx_mask() const {
  std::uint64_t m = 0;
  for (size_t n = 0; n < b_rx.size(); ++n)
    if (b_rx[n]) m |= std::uint64_t{1} << n;
  return m;
}

int Allocation::n_rx() const { return static_cast<int>(std::count(b_rx.begin(), b_rx.end(), true)); }

std::vector<int> Allocation::tx_set() const {
  std::vector<int> v;
  for (size_t n = 0; n < b_tx.size(); ++n)
    if (b_tx[n]) v.push_back(static_cast<int>(n));
  return v;
}

std::vector<int> Allocation::rx_set() const {
  std::vector<int> v;
  for (size_t n = 0; n < b_rx.size(); ++n)
    if (b_rx[n]) v.push_back(static_cast<int>(n));
  return v;
}

void check_allocation(const Allocation& a, int n_rx_max) {
  if (a.b_tx.size() != a.b_rx.size()) throw ConstraintError("allocation: vector sizes differ");
  for (size_t n = 0; n < a.b_tx.size(); ++n) {
    if (a.b_tx[n] && a.b_rx[n]) throw ConstraintError("allocation: AP " + std::to_string(n) + " is both Tx and Rx");
    if (!a.b_tx[n] && !a.b_rx[n]) throw ConstraintError("allocation: AP " + std::to_string(n) + " is unused");
  }
  if (a.n_rx() > n_rx_max)
    throw ConstraintError("allocation: " + std::to_string(a.n_rx()) + " Rx APs exceed the limit " +
                          std::to_string(n_rx_max));
}

SafCache build_saf_cache(const Scenario& base, const WaveformBank& bank, double pitch) {
  Scenario s = base;
  s.ues.clear();
  s.targets = {Target{s.roi.center, 1.0, 0.0}};
  if (pitch > 0) s.roi.pitch = pitch;
  validate(s);
  const int N = s.N();
  const auto all = all_aps(N);
  const GridConfig& g = s.grid;

  PrecoderBank pb;
  pb.tx_set = all;
  pb.L = s.aps.front().L;
  pb.Q = 0;
  pb.M = g.M;
  pb.comm.assign(g.M, CMat(static_cast<long>(N) * pb.L, 0));
  pb.sen = build_sensing_precoder(build_roi_channel(s), all);
  std::vector<const SensingWaveform*> wf;
  for (int n : all) wf.push_back(&bank.at(n));
  const TxGrid tx = assemble_tx_amplitudes(pb, {}, wf, 0.0, 1.0, g);
  const SensingChannelFT H = build_sensing_channel_ft(s);
  const ImagingGeometry geo = imaging_geometry(s);

  SafCache c;
  c.N = N;
  c.nx = geo.px.nx;
  c.ny = geo.px.ny;
  c.images.resize(static_cast<size_t>(N) * N);
  const long P = static_cast<long>(geo.px.centers.size());
  for (int r = 0; r < N; ++r) {
    const auto z = ap_receive(tx, H, {r}, 0.0, 0).front();
    for (int n = 0; n < N; ++n) {
      if (n == r) continue;
      std::vector<CGrid> cir;
      for (int u = 0; u < pb.L; ++u) cir.push_back(correlate_dd(antenna_grid(z.sen_by_tx[n], u, g), tx.sensing_ft[n], g));
      const CMat slice = zero_doppler_slice(cir);
      CVec img = CVec::Zero(P);
      backproject_into(geo, n, r, {&slice}, {&img}, g);
      c.images[static_cast<size_t>(n) * N + r] = img;
    }
  }
  return c;
}

CVec allocation_image(const Allocation& a, const SafCache& cache) {
  if (static_cast<int>(a.b_rx.size()) != cache.N) throw DimensionError("allocation size does not match the cache");
  check_allocation(a, cache.N);
  const auto tx = a.tx_set(), rx = a.rx_set();
  if (tx.empty() || rx.empty()) throw UndefinedEntropyError("allocation has no Tx/Rx pair");
  CVec img = CVec::Zero(static_cast<long>(cache.nx) * cache.ny);
  for (int n : tx)
    for (int r : rx) img += cache.pair(n, r);
  return img;
}

double allocation_entropy(const Allocation& a, const SafCache& cache) {
  return entropy(allocation_image(a, cache));
}

double EntropyOracle::operator()(std::uint64_t rx_mask) {
  {
    std::lock_guard lock(mu_);
    if (auto it = memo_.find(rx_mask); it != memo_.end()) return it->second;
  }
  const double e = allocation_entropy(Allocation::from_rx_mask(cache_.N, rx_mask), cache_);
  std::lock_guard lock(mu_);
  memo_.emplace(rx_mask, e);
  return e;
}

namespace {

int popcount(std::uint64_t m) { return std::popcount(m); }

// Keeps 1 <= |rx| <= n_rx_max; drops the Rx bit whose removal hurts least.
std::uint64_t repair(std::uint64_t m, int N, int n_rx_max, EntropyOracle& f, Rng& rng) {
  const std::uint64_t full = N >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << N) - 1;
  m &= full;
  if (m == 0) m = std::uint64_t{1} << std::uniform_int_distribution<int>(0, N - 1)(rng);
  while (popcount(m) > n_rx_max) {
    std::uint64_t best = 0;
    double best_e = std::numeric_limits<double>::infinity();
    for (int n = 0; n < N; ++n) {
      if (!((m >> n) & 1U)) continue;
      const std::uint64_t c = m & ~(std::uint64_t{1} << n);
      const double e = f(c);
      if (e < best_e) {
        best_e = e;
        best = c;
      }
    }
    m = best;
  }
  return m;
}

}  // namespace

SelectionResult solve_ga(EntropyOracle& f, int n_rx_max, const GaConfig& cfg) {
  const int N = f.N();
  if (N < 2) throw ConfigError("solve_ga: need at least two APs");
  if (n_rx_max < 1) throw ConfigError("solve_ga: n_rx_max must be at least 1");
  if (cfg.population < 2) throw ConfigError("solve_ga: population must be at least 2");
  n_rx_max = std::min(n_rx_max, N - 1);
  const double pm = cfg.mutation_rate < 0 ? 2.0 / N : cfg.mutation_rate;
  Rng rng(split_seed(cfg.seed, 0x6a));
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, cfg.population - 1);

  struct Ind {
    std::uint64_t m;
    double e;
  };
  std::vector<Ind> pop;
  for (int i = 0; i < cfg.population; ++i) {
    const int k = std::uniform_int_distribution<int>(1, n_rx_max)(rng);
    std::vector<int> idx(N);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    std::uint64_t m = 0;
    for (int j = 0; j < k; ++j) m |= std::uint64_t{1} << idx[j];
    pop.push_back({m, f(m)});
  }
  auto by_entropy = [](const Ind& a, const Ind& b) { return a.e < b.e || (a.e == b.e && a.m < b.m); };
  std::sort(pop.begin(), pop.end(), by_entropy);

  SelectionResult res;
  auto tournament = [&]() -> const Ind& {
    const Ind* best = &pop[pick(rng)];
    for (int i = 1; i < cfg.tournament; ++i) {
      const Ind& c = pop[pick(rng)];
      if (by_entropy(c, *best)) best = &c;
    }
    return *best;
  };
  for (int gen = 0; gen < cfg.generations; ++gen) {
    std::vector<Ind> next(pop.begin(), pop.begin() + std::min(cfg.elitism, cfg.population));
    while (static_cast<int>(next.size()) < cfg.population) {
      const Ind& a = tournament();
      const Ind& b = tournament();
      std::uint64_t child = a.m;
      if (u01(rng) < cfg.crossover_rate) {
        child = 0;
        for (int n = 0; n < N; ++n) {
          const Ind& src = u01(rng) < 0.5 ? a : b;
          child |= src.m & (std::uint64_t{1} << n);
        }
      }
      for (int n = 0; n < N; ++n)
        if (u01(rng) < pm) child ^= std::uint64_t{1} << n;
      child = repair(child, N, n_rx_max, f, rng);
      next.push_back({child, f(child)});
    }
    std::sort(next.begin(), next.end(), by_entropy);
    pop = std::move(next);
    res.history.push_back(pop.front().e);
  }
  res.allocation = Allocation::from_rx_mask(N, pop.front().m);
  res.entropy = pop.front().e;
  res.candidates = f.evaluations();
  return res;
}

SelectionResult solve_ga(const SafCache& cache, int n_rx_max, const GaConfig& cfg) {
  EntropyOracle f(cache);
  return solve_ga(f, n_rx_max, cfg);
}

double feasible_count(int N, int n_rx_max) {
  double total = 0.0, c = 1.0;
  for (int k = 1; k <= std::min(n_rx_max, N); ++k) {
    c = c * (N - k + 1) / k;
    total += c;
  }
  return total;
}

SelectionResult solve_exhaustive(EntropyOracle& f, int n_rx_max) {
  const int N = f.N();
  if (n_rx_max < 1) throw ConfigError("solve_exhaustive: n_rx_max must be at least 1");
  n_rx_max = std::min(n_rx_max, N - 1);
  const double count = feasible_count(N, n_rx_max);
  if (count > kExhaustiveBudget || N > 40)
    throw BudgetError("solve_exhaustive: " + std::to_string(static_cast<long long>(count)) +
                      " candidates exceed the budget of " + std::to_string(static_cast<long long>(kExhaustiveBudget)));
  SelectionResult res;
  res.entropy = std::numeric_limits<double>::infinity();
  std::uint64_t best = 0;
  // Gosper's hack over every popcount k.
  for (int k = 1; k <= n_rx_max; ++k) {
    std::uint64_t m = (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit = std::uint64_t{1} << N;
    while (m < limit) {
      const double e = f(m);
      ++res.candidates;
      if (e < res.entropy) {
        res.entropy = e;
        best = m;
      }
      const std::uint64_t c = m & (~m + 1);
      const std::uint64_t r = m + c;
      m = (((r ^ m) >> 2) / c) | r;
    }
  }
  res.allocation = Allocation::from_rx_mask(N, best);
  return res;
}

SelectionResult solve_exhaustive(const SafCache& cache, int n_rx_max) {
  EntropyOracle f(cache);
  return solve_exhaustive(f, n_rx_max);
}

std::vector<double> random_allocation_entropies(EntropyOracle& f, int n_rx, int count,
                                                std::uint64_t seed) {
  const int N = f.N();
  if (n_rx < 1 || n_rx >= N) throw ConfigError("random allocation needs 1 <= n_rx < N");
  Rng rng(split_seed(seed, 0x7d));
  std::vector<int> idx(N);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    std::shuffle(idx.begin(), idx.end(), rng);
    std::uint64_t m = 0;
    for (int j = 0; j < n_rx; ++j) m |= std::uint64_t{1} << idx[j];
    out.push_back(f(m));
  }
  return out;
}

}  // namespace disac
