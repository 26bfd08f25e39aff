#include "helpers.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "disac/dump.hpp"
#include "disac/experiment.hpp"

using namespace disac;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.N = 4;
  c.L = 2;
  c.K = 1;
  c.M_list = {256};
  c.B_list = {1e9};
  c.roi_size_x = c.roi_size_y = 0.5;
  c.pixel_pitch = 0.025;
  c.selection_pitch = 0.05;
  c.eta_list = {0.0, 0.5};
  c.n_rx_list = {1, 2};
  c.Q = 1;
  c.realizations = 2;
  c.replicates = 3;
  c.seed = 17;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("disac_unit_" + name)) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("sweep layout per mode") {
  auto c = small_config();
  const auto r = run_sweep(c);
  CHECK(r.rows.size() == 3 * 2 * 2);
  CHECK(r.points.size() == 1);
  for (const auto& row : r.rows) {
    CHECK(row.status == "ok");
    CHECK(row.tx_set.size() + row.rx_set.size() == 4);
    CHECK(static_cast<int>(row.rx_set.size()) <= row.n_rx);
    CHECK(std::isfinite(row.se_mean));
    CHECK(std::isfinite(row.entropy));
  }

  c.mode = Mode::DMIMO;
  const auto d = run_sweep(c);
  CHECK(d.rows.size() == 3);
  for (const auto& row : d.rows) {
    CHECK(row.eta == 1.0);
    CHECK(row.rx_set.empty());
    CHECK(row.tx_set.size() == 4);
    CHECK(std::isnan(row.entropy));
    CHECK(std::isnan(row.sinr_sen_db));
    CHECK(row.se_mean <= row.se_bound_mean + 1e-12);
  }
  const std::string line = to_csv(d.rows[0]);
  CHECK(line.find(",,") != std::string::npos);

  c.mode = Mode::DRN;
  c.Q = 0;
  const auto n = run_sweep(c);
  CHECK(n.rows.size() == 3);
  for (const auto& row : n.rows) {
    CHECK(row.eta == 0.0);
    CHECK(row.rx_set.size() == 4);
    CHECK(row.tx_set.size() == 4);
    CHECK(std::isnan(row.se_mean));
    CHECK(std::isfinite(row.entropy));
  }
}

TEST_CASE("output files") {
  TempDir a("a"), b("b"), e("e");
  auto c = small_config();
  emit_results(run_sweep(c), c, a.path.string());
  emit_results(run_sweep(c), c, b.path.string());
  const std::string csv = slurp(a.path / "results.csv");
  CHECK(csv == slurp(b.path / "results.csv"));
  CHECK(csv.substr(0, csv.find('\n')) == csv_header());

  SUBCASE("thread count does not change the table") {
    TempDir t("t");
    c.threads = 3;
    emit_results(run_sweep(c), c, t.path.string());
    CHECK(slurp(t.path / "results.csv") == csv);
  }

  SUBCASE("manifest round-trips the configuration") {
    const auto m = nlohmann::json::parse(slurp(a.path / "manifest.json"));
    CHECK(m.at("master_seed").get<std::uint64_t>() == 17);
    CHECK(m.at("rows").get<int>() == 12);
    CHECK(m.at("wall_time_s").get<double>() >= 0.0);
    CHECK(to_json(config_from_json(m.at("config"))) == to_json(c));
    CHECK(m.at("points")[0].at("selections").size() == 2);
  }

  SUBCASE("empty table") {
    emit_results(SweepResult{}, c, e.path.string());
    CHECK(slurp(e.path / "results.csv") == csv_header() + "\n");
  }

  SUBCASE("seed changes the table") {
    TempDir s("s");
    c.seed = 18;
    emit_results(run_sweep(c), c, s.path.string());
    CHECK(slurp(s.path / "results.csv") != csv);
  }
}

TEST_CASE("image dumps") {
  TempDir d("img");
  auto c = small_config();
  c.replicates = 1;
  c.dump_images = true;
  const auto r = run_sweep(c);
  CHECK(r.images.size() == 4);
  emit_results(r, c, d.path.string());
  const auto& im = r.images.front();
  const auto back = read_image((d.path / "images" / im.name).string());
  CHECK(back.nx == im.nx);
  CHECK(back.ny == im.ny);
  CHECK(back.pixels == im.pixels);
}

TEST_CASE("configuration parsing") {
  const auto c = config_from_json(nlohmann::json::parse(R"({"N": 4, "M": 256, "eta": 0.3, "n_rx": [1, 3]})"));
  CHECK(c.N == 4);
  CHECK(c.M_list == std::vector<int>{256});
  CHECK(c.eta_list == std::vector<double>{0.3});
  CHECK(to_json(config_from_json(to_json(c))) == to_json(c));
  CHECK(c.power_w(256) == doctest::Approx(2 * dbm_to_watt(-15.0)));
  CHECK(c.pitch() == doctest::Approx(kSpeedOfLight / 10e9 / 4));

  using nlohmann::json;
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"Nx": 4})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"N": "four"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"N": 4, "n_rx": [4]})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"eta": [1.5]})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"mode": "radar"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"roi": {"center_m": [1]}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse("[1, 2]")), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/disac.json"), IoError);

  SUBCASE("comments are accepted in files") {
    TempDir d("cfg");
    fs::create_directories(d.path);
    const auto p = d.path / "c.json";
    std::ofstream(p) << "{\n  // lattice size\n  \"N\": 16, \"L\": 2\n}\n";
    CHECK(load_config(p.string()).N == 16);
  }
}

TEST_CASE("scenario construction from a configuration") {
  auto c = small_config();
  c.Q = 3;
  c.n_targets = 2;
  const auto base = base_scenario(c, 256, 1e9);
  CHECK(base.N() == 4);
  CHECK(base.P == doctest::Approx(c.power_w(256)));
  const auto s = randomize(base, c, 5);
  CHECK(s.Q() == 3);
  for (const auto& u : s.ues) CHECK_FALSE(s.roi.contains(u.position));
  REQUIRE(s.targets.size() == 2);
  CHECK((s.targets[0].position - s.roi.center).norm() < 1e-12);
  CHECK(s.roi.contains(s.targets[1].position));
  const auto again = randomize(base, c, 5);
  CHECK(again.ues[2].position == s.ues[2].position);
  CHECK(randomize(base, c, 6).ues[0].position != s.ues[0].position);
}

TEST_CASE("receiver choice") {
  auto c = small_config();
  c.rx_selection = RxSelection::First;
  const auto first = choose_rx(c, nullptr, 2, 1);
  CHECK(first.rx_set == std::vector<int>{0, 1});
  CHECK(first.tx_set == std::vector<int>{2, 3});
  CHECK(first.method == "first");

  const auto base = base_scenario(c, 256, 1e9);
  const auto bank = make_waveform_bank(base, WaveformKind::Designed, 1);
  const auto cache = build_saf_cache(base, bank, c.sel_pitch());
  EntropyOracle oracle(cache);
  c.rx_selection = RxSelection::Auto;
  const auto best = choose_rx(c, &oracle, 2, 1);
  CHECK(best.method == "exhaustive");
  CHECK(best.saf_entropy == doctest::Approx(solve_exhaustive(oracle, 2).entropy));
  c.rx_selection = RxSelection::Ga;
  CHECK(choose_rx(c, &oracle, 2, 1).method == "ga");
}

TEST_CASE("waveform dumps") {
  TempDir d("wf");
  fs::create_directories(d.path);
  const auto c = small_config();
  const auto base = base_scenario(c, 256, 1e9);
  const auto bank = make_waveform_bank(base, WaveformKind::Designed, 2);
  const auto p = (d.path / "w.txt").string();
  write_waveforms(p, bank, base.grid);
  const auto w = read_waveforms(p);
  CHECK(w.N == 4);
  CHECK(w.M == 256);
  CHECK(w.support.lags == bank.support.lags);
  for (int n = 0; n < 4; ++n) {
    CHECK(w.delay[n] == bank.at(n).delay_seq);
    CHECK(w.doppler[n] == bank.at(n).doppler_seq);
  }
  CHECK(max_cross_correlation(w.delay, w.support.lags) < 1e-8 * 256);
  CHECK_THROWS_AS(read_waveforms((d.path / "missing.txt").string()), IoError);
}

}
