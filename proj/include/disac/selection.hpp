#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "disac/pipeline.hpp"

namespace disac {

/// Tx/Rx partition. Every AP is exactly one of the two.
struct Allocation {
  std::vector<bool> b_tx;
  std::vector<bool> b_rx;

  static Allocation from_rx_mask(int N, std::uint64_t rx_mask);
  std::uint64_t rx_mask() const;
  int n_rx() const;
  std::vector<int> tx_set() const;
  std::vector<int> rx_set() const;
};

/// Throws ConstraintError unless b_tx + b_rx = 1 everywhere and
/// sum(b_rx) <= n_rx_max.
void check_allocation(const Allocation& a, int n_rx_max);

/// Noiseless single-target images I_nr for every ordered pair n != r, all APs
/// transmitting their bank waveform with the ROI precoder.
struct SafCache {
  int N = 0;
  int nx = 0, ny = 0;
  std::vector<CVec> images;  // [n * N + r], empty on the diagonal

  const CVec& pair(int n, int r) const { return images[static_cast<size_t>(n) * N + r]; }
};

/// The scenario's targets and UEs are replaced by one unit target at the ROI
/// centre; the ROI pitch is overridden when `pitch` > 0.
SafCache build_saf_cache(const Scenario& s, const WaveformBank& bank, double pitch = 0.0);

/// Fused image of an allocation: sum over Tx n, Rx r of I_nr.
CVec allocation_image(const Allocation& a, const SafCache& cache);

/// Entropy of the fused image. UndefinedEntropyError when no pair is active.
double allocation_entropy(const Allocation& a, const SafCache& cache);

/// Memoized entropy by Rx mask; safe to share between solver runs.
class EntropyOracle {
 public:
  explicit EntropyOracle(const SafCache& cache) : cache_(cache) {}
  double operator()(std::uint64_t rx_mask);
  int N() const { return cache_.N; }
  size_t evaluations() const { return memo_.size(); }

 private:
  const SafCache& cache_;
  std::mutex mu_;
  std::map<std::uint64_t, double> memo_;
};

struct GaConfig {
  int population = 64;
  int generations = 200;
  double crossover_rate = 0.9;
  double mutation_rate = -1.0;  // negative: 2/N
  int elitism = 2;
  int tournament = 3;
  std::uint64_t seed = 1;
};

struct SelectionResult {
  Allocation allocation;
  double entropy = 0.0;
  std::vector<double> history;  // incumbent entropy after each generation (GA)
  size_t candidates = 0;        // distinct allocations evaluated
};

SelectionResult solve_ga(EntropyOracle& oracle, int n_rx_max, const GaConfig& cfg);
SelectionResult solve_ga(const SafCache& cache, int n_rx_max, const GaConfig& cfg);

inline constexpr double kExhaustiveBudget = 1e6;

/// Number of feasible allocations sum_{k=1..n_rx_max} C(N, k).
double feasible_count(int N, int n_rx_max);

SelectionResult solve_exhaustive(EntropyOracle& oracle, int n_rx_max);
SelectionResult solve_exhaustive(const SafCache& cache, int n_rx_max);

/// Entropies of `count` uniformly random allocations with exactly n_rx Rx APs.
std::vector<double> random_allocation_entropies(EntropyOracle& oracle, int n_rx, int count,
                                                std::uint64_t seed);

}  // namespace disac
