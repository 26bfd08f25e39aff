#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "criteria.hpp"
#include "disac/dump.hpp"
#include "disac/experiment.hpp"

using namespace disac;

namespace {

ExperimentConfig config_or_default(const std::string& path) {
  return path.empty() ? ExperimentConfig{} : load_config(path);
}

std::string list(const std::vector<int>& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

struct PointArgs {
  std::string config;
  std::optional<int> M, N, L, K;
  std::optional<double> B;
  std::uint64_t seed = 1;

  void add(CLI::App* app) {
    app->add_option("-c,--config", config, "experiment config (JSON, comments allowed)")->check(CLI::ExistingFile);
    app->add_option("-N", N, "number of APs");
    app->add_option("-L", L, "antennas per AP");
    app->add_option("-M", M, "subcarriers (default: first entry of the config's M list)");
    app->add_option("-K", K, "OFDM symbols");
    app->add_option("-B,--bandwidth", B, "bandwidth in Hz (default: first entry of the config's list)");
    app->add_option("--seed", seed, "design seed");
  }

  std::pair<ExperimentConfig, Scenario> resolve() const {
    ExperimentConfig c = config_or_default(config);
    if (N) c.N = *N;
    if (L) c.L = *L;
    if (K) c.K = *K;
    // The sweep's N_rx list is irrelevant here and may not fit an overridden N.
    c.n_rx_list = {1};
    check(c);
    const Scenario s = base_scenario(c, M.value_or(c.M_list.front()), B.value_or(c.B_list.front()));
    validate(s);
    return {c, s};
  }
};

int cmd_run(const std::string& path, const std::string& out_dir, std::optional<int> threads,
            std::optional<std::uint64_t> seed, bool dump_images) {
  ExperimentConfig c = load_config(path);
  if (threads) c.threads = *threads;
  if (seed) c.seed = *seed;
  if (dump_images) c.dump_images = true;
  std::string dir = out_dir.empty() ? c.output_dir : out_dir;
  if (dir.empty()) dir = "results";
  check(c);
  const SweepResult r = run_sweep(c);
  emit_results(r, c, dir);
  int errors = 0;
  for (const auto& row : r.rows) errors += row.status != "ok";
  std::printf("%zu rows, %zu images, %d error rows, %.1f s -> %s\n", r.rows.size(), r.images.size(), errors,
              r.wall_time_s, dir.c_str());
  return 0;
}

int cmd_design(const PointArgs& a, const std::vector<int>& rx, bool random, const std::string& out) {
  const auto [c, s] = a.resolve();
  std::vector<int> tx;
  if (!rx.empty()) tx = complement(c.N, rx);
  const WaveformBank bank =
      make_waveform_bank(s, random ? WaveformKind::PseudoRandom : WaveformKind::Designed, a.seed, tx, rx);
  std::vector<CVec> seqs;
  for (const auto& w : bank.by_ap)
    if (w) seqs.push_back(w->delay_seq);
  const auto& lags = bank.support.lags;
  std::printf("M=%d K=%d B=%g Hz, %zu sequences (%s)\n", s.grid.M, s.grid.K, s.grid.B, seqs.size(),
              bank.all_pairs ? "all pairs" : ("Tx " + list(tx) + " / Rx " + list(rx)).c_str());
  std::printf("delay support: %zu samples, %zu lags, bound floor(M/|lags|) = %zu\n", bank.support.samples.size(),
              lags.size(), static_cast<size_t>(s.grid.M) / std::max<size_t>(1, lags.size()));
  std::printf("max cross-correlation on the lag set: %.3e (M = %d)\n", max_cross_correlation(seqs, lags), s.grid.M);
  if (!out.empty()) {
    write_waveforms(out, bank, s.grid);
    std::printf("written to %s\n", out.c_str());
  }
  return 0;
}

int cmd_select(const PointArgs& a, int n_rx_max, const std::string& method, bool as_json) {
  auto [c, s] = a.resolve();
  if (n_rx_max < 1 || n_rx_max >= c.N) throw ConfigError("select-aps: --n-rx-max must lie in [1, N-1]");
  c.rx_selection = rx_selection_from_string(method);
  const WaveformBank bank = make_waveform_bank(s, c.waveform, a.seed);
  const SafCache cache = build_saf_cache(s, bank, c.sel_pitch());
  EntropyOracle oracle(cache);
  const RxChoice ch = choose_rx(c, &oracle, n_rx_max, a.seed);
  if (as_json) {
    std::cout << nlohmann::json{{"N", c.N},
                                {"n_rx_max", n_rx_max},
                                {"method", ch.method},
                                {"rx_set", ch.rx_set},
                                {"tx_set", ch.tx_set},
                                {"saf_entropy_bits", ch.saf_entropy},
                                {"evaluations", oracle.evaluations()}}
                     .dump(2)
              << '\n';
  } else {
    std::printf("Rx %s  Tx %s  entropy %.4f bits  (%s, %ld evaluations)\n", list(ch.rx_set).c_str(),
                list(ch.tx_set).c_str(), ch.saf_entropy, ch.method.c_str(), static_cast<long>(oracle.evaluations()));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Downlink distributed-MIMO simulator with coherent multistatic imaging"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a parameter sweep and write results.csv, manifest.json, images/");
  std::string config, out_dir;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
  bool dump_images = false;
  run->add_option("config", config, "experiment config")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", out_dir, "output directory (default: config output_dir, else ./results)");
  run->add_option("-j,--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "override the master seed");
  run->add_flag("--dump-images", dump_images, "write fused images of replicate 0");

  auto* design = app.add_subcommand("design-waveforms", "design delay sequences orthogonal over the delay support");
  PointArgs design_args;
  design_args.add(design);
  std::vector<int> design_rx;
  bool random = false;
  std::string wave_out;
  design->add_option("--rx", design_rx, "Rx AP indices (default: support over all AP pairs)");
  design->add_flag("--random", random, "pseudo-random sequences instead");
  design->add_option("-o,--output", wave_out, "write the sequences to this file");

  auto* select = app.add_subcommand("select-aps", "choose the Rx APs that minimize the SAF entropy");
  PointArgs select_args;
  select_args.add(select);
  int n_rx_max = 4;
  std::string method = "auto";
  bool as_json = false;
  select->add_option("-r,--n-rx-max", n_rx_max, "maximum number of Rx APs");
  select->add_option("--method", method, "auto, ga, exhaustive or first")
      ->check(CLI::IsMember({"auto", "ga", "exhaustive", "first"}));
  select->add_flag("--json", as_json, "print the result as JSON");

  auto* validate = app.add_subcommand("validate", "run the acceptance criteria");
  std::vector<int> ids;
  validate->add_option("ids", ids, "criterion numbers (default: all)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(config, out_dir, threads, seed, dump_images);
    if (*design) return cmd_design(design_args, design_rx, random, wave_out);
    if (*select) return cmd_select(select_args, n_rx_max, method, as_json);
    if (*validate) return acceptance::run(ids, std::cout) == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
