#include "disac/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <thread>

#include "disac/dump.hpp"

namespace disac {

using nlohmann::json;

namespace {

std::string fmt(double x) {
  if (std::isnan(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return kNaN;
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

}  // namespace

std::string csv_header() {
  return "mode,N,L,M,K,bandwidth_hz,n_rx,eta,replicate,seed,tx_set,rx_set,se_bps_hz,se_closed_bps_hz,"
         "se_bound_bps_hz,sinr_sen_db,sinr_sen_closed_db,drn_bound_db,entropy_bits,status";
}

std::string to_csv(const ResultRow& r) {
  std::string s = r.mode;
  for (const auto& f : {std::to_string(r.N), std::to_string(r.L), std::to_string(r.M), std::to_string(r.K),
                        fmt(r.B), std::to_string(r.n_rx), fmt(r.eta), std::to_string(r.replicate),
                        std::to_string(r.seed), join(r.tx_set), join(r.rx_set), fmt(r.se_mean),
                        fmt(r.se_closed_mean), fmt(r.se_bound_mean), fmt(r.sinr_sen_db), fmt(r.sinr_sen_cf_db),
                        fmt(r.drn_bound_db), fmt(r.entropy), r.status})
    s += "," + f;
  return s;
}

RxChoice choose_rx(const ExperimentConfig& c, EntropyOracle* oracle, int n_rx, std::uint64_t seed) {
  RxChoice ch;
  RxSelection how = c.rx_selection;
  if (!oracle) how = RxSelection::First;
  if (how == RxSelection::Auto) how = feasible_count(c.N, n_rx) <= kAutoExhaustiveLimit ? RxSelection::Exhaustive : RxSelection::Ga;
  SelectionResult sel;
  switch (how) {
    case RxSelection::First: {
      std::vector<int> rx;
      for (int n = 0; n < n_rx; ++n) rx.push_back(n);
      ch.rx_set = rx;
      ch.tx_set = complement(c.N, rx);
      ch.method = "first";
      if (oracle) ch.saf_entropy = (*oracle)(Allocation::from_rx_mask(c.N, (std::uint64_t{1} << n_rx) - 1).rx_mask());
      return ch;
    }
    case RxSelection::Exhaustive:
      sel = solve_exhaustive(*oracle, n_rx);
      ch.method = "exhaustive";
      break;
    default: {
      GaConfig ga;
      ga.seed = seed;
      sel = solve_ga(*oracle, n_rx, ga);
      ch.method = "ga";
    }
  }
  ch.rx_set = sel.allocation.rx_set();
  ch.tx_set = sel.allocation.tx_set();
  ch.saf_entropy = sel.entropy;
  return ch;
}

namespace {

struct Setting {
  int n_rx = 0;
  std::vector<int> tx_set, rx_set;
  std::shared_ptr<const WaveformBank> bank;
  std::string status = "ok";
};

struct Point {
  int index = 0;
  int M = 0;
  double B = 0.0;
  Scenario base;
  std::vector<Setting> settings;
};

Point prepare_point(const ExperimentConfig& c, int index, int M, double B, json& record) {
  Point p;
  p.index = index;
  p.M = M;
  p.B = B;
  p.base = base_scenario(c, M, B);
  const std::uint64_t wseed = split_seed(c.seed, 0xb0, index);
  record = json{{"M", M}, {"bandwidth_hz", B}};

  std::shared_ptr<const WaveformBank> shared;
  std::string bank_error;
  try {
    shared = std::make_shared<WaveformBank>(make_waveform_bank(p.base, c.waveform, wseed));
    record["lags"] = shared->support.lags.size();
    record["samples"] = shared->support.samples.size();
    record["waveforms_all_pairs"] = true;
  } catch (const std::exception& e) {
    bank_error = e.what();
    record["waveforms_all_pairs"] = false;
    record["waveform_note"] = bank_error;
  }

  const auto all = all_aps(c.N);
  if (c.mode == Mode::DMIMO || c.mode == Mode::DRN) {
    Setting s;
    s.tx_set = all;
    s.rx_set = c.mode == Mode::DRN ? all : std::vector<int>{};
    s.n_rx = static_cast<int>(s.rx_set.size());
    s.bank = shared;
    if (!shared) s.status = "error: " + bank_error;
    p.settings.push_back(s);
    return p;
  }

  std::optional<SafCache> cache;
  std::unique_ptr<EntropyOracle> oracle;
  if (shared) {
    cache = build_saf_cache(p.base, *shared, c.sel_pitch());
    oracle = std::make_unique<EntropyOracle>(*cache);
  }
  record["selections"] = json::array();
  for (int n_rx : c.n_rx_list) {
    Setting s;
    s.n_rx = n_rx;
    const RxChoice ch = choose_rx(c, oracle.get(), n_rx, split_seed(c.seed, 0x6a, index, n_rx));
    s.tx_set = ch.tx_set;
    s.rx_set = ch.rx_set;
    if (shared) {
      s.bank = shared;
    } else {
      try {
        s.bank = std::make_shared<WaveformBank>(make_waveform_bank(p.base, c.waveform, wseed, s.tx_set, s.rx_set));
      } catch (const std::exception& e) {
        s.status = std::string("error: ") + e.what();
      }
    }
    record["selections"].push_back({{"n_rx_max", n_rx},
                                     {"rx_set", ch.rx_set},
                                     {"method", ch.method},
                                     {"saf_entropy_bits", std::isnan(ch.saf_entropy) ? json(nullptr) : json(ch.saf_entropy)}});
    p.settings.push_back(s);
  }
  return p;
}

struct TaskOut {
  std::vector<ResultRow> rows;
  std::vector<ImageRecord> images;
};

std::string tag(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

TaskOut run_task(const ExperimentConfig& c, const Point& p, int rep) {
  TaskOut out;
  const std::uint64_t seed = split_seed(c.seed, 0x7e, p.index, rep);
  const Scenario s = randomize(p.base, c, seed);
  for (const auto& set : p.settings) {
    std::vector<double> etas = c.eta_list;
    if (c.mode == Mode::DMIMO) etas = {1.0};
    if (c.mode == Mode::DRN) etas = {0.0};
    ResultRow proto;
    proto.mode = to_string(c.mode);
    proto.N = c.N;
    proto.L = c.L;
    proto.M = p.M;
    proto.K = c.K;
    proto.B = p.B;
    proto.n_rx = set.n_rx;
    proto.replicate = rep;
    proto.seed = seed;
    proto.tx_set = set.tx_set;
    proto.rx_set = set.rx_set;
    std::optional<PipelineState> st;
    if (set.bank) {
      try {
        PipelineConfig pc;
        pc.tx_set = set.tx_set;
        pc.rx_set = set.rx_set;
        pc.precoder = c.precoder;
        pc.qam_order = c.qam_order;
        pc.clusters = c.clusters;
        pc.realizations = c.realizations;
        pc.noise = c.noise;
        pc.imaging = !set.rx_set.empty();
        pc.seed = seed;
        st = simulate(s, *set.bank, pc);
      } catch (const std::exception& e) {
        proto.status = std::string("error: ") + e.what();
      }
    } else {
      proto.status = set.status;
    }
    for (double eta : etas) {
      ResultRow row = proto;
      row.eta = eta;
      if (st) {
        const EtaMetrics m = evaluate(*st, eta);
        row.se_mean = mean(m.se);
        row.se_closed_mean = mean(m.se_closed);
        row.se_bound_mean = mean(m.se_bound);
        row.sinr_sen_db = m.sinr_sen_avg_db;
        row.sinr_sen_cf_db = m.sinr_sen_cf_avg_db;
        row.drn_bound_db = m.drn_bound_avg_db;
        row.entropy = m.entropy;
        if (c.dump_images && rep == 0 && st->has_image) {
          ImageRecord im;
          im.name = "image_M" + std::to_string(p.M) + "_B" + tag(p.B) + "_nrx" + std::to_string(set.n_rx) +
                    "_eta" + tag(eta) + ".txt";
          im.pixels = fused_image(*st, eta);
          im.nx = st->nx;
          im.ny = st->ny;
          im.roi = s.roi;
          for (int n : set.tx_set)
            for (int r : set.rx_set) im.pairs.emplace_back(n, r);
          out.images.push_back(std::move(im));
        }
      }
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& c) {
  check(c);
  const auto t0 = std::chrono::steady_clock::now();
  SweepResult res;
  std::vector<Point> points;
  int idx = 0;
  for (int M : c.M_list)
    for (double B : c.B_list) {
      json rec;
      points.push_back(prepare_point(c, idx++, M, B, rec));
      res.points.push_back(rec);
    }

  const int R = c.replicates;
  const size_t n_tasks = points.size() * R;
  std::vector<TaskOut> outs(n_tasks);
  std::vector<std::string> errors(n_tasks);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < n_tasks; i = next++) {
      try {
        outs[i] = run_task(c, points[i / R], static_cast<int>(i % R));
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const int nthreads = std::max(1, std::min<int>(c.threads, static_cast<int>(n_tasks)));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (size_t i = 0; i < n_tasks; ++i) {
    if (!errors[i].empty()) throw std::runtime_error("replicate " + std::to_string(i) + ": " + errors[i]);
    for (auto& r : outs[i].rows) res.rows.push_back(std::move(r));
    for (auto& im : outs[i].images) res.images.push_back(std::move(im));
  }
  res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

void emit_results(const SweepResult& r, const ExperimentConfig& c, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  const std::string csv = (fs::path(dir) / "results.csv").string();
  {
    std::ofstream out(csv);
    if (!out) throw IoError("cannot write " + csv);
    out << csv_header() << '\n';
    for (const auto& row : r.rows) out << to_csv(row) << '\n';
    if (!out) throw IoError("write failed: " + csv);
  }
  std::vector<std::string> names;
  if (!r.images.empty()) {
    const fs::path idir = fs::path(dir) / "images";
    fs::create_directories(idir, ec);
    if (ec) throw IoError("cannot create " + idir.string() + ": " + ec.message());
    for (const auto& im : r.images) {
      write_image((idir / im.name).string(), im.pixels, im.nx, im.ny, im.roi, im.pairs);
      names.push_back("images/" + im.name);
    }
  }
  const std::string mpath = (fs::path(dir) / "manifest.json").string();
  std::ofstream out(mpath);
  if (!out) throw IoError("cannot write " + mpath);
  const json m{{"library", "disac"},
               {"version", kLibraryVersion},
               {"config", to_json(c)},
               {"master_seed", c.seed},
               {"points", r.points},
               {"rows", r.rows.size()},
               {"images", names},
               {"wall_time_s", r.wall_time_s}};
  out << m.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + mpath);
}

}  // namespace disac
