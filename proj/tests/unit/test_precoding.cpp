#include "helpers.hpp"

#include "disac/precoding.hpp"

using namespace disac;

namespace {

// Channel with given per-AP, per-UE vectors, identical on every subcarrier.
CommChannel flat_channel(const std::vector<std::vector<CVec>>& h, int M) {
  CommChannel ch;
  ch.N = static_cast<int>(h.size());
  ch.Q = static_cast<int>(h.front().size());
  ch.L = static_cast<int>(h.front().front().size());
  ch.M = M;
  ch.paths.resize(static_cast<size_t>(ch.N) * ch.Q);
  for (int n = 0; n < ch.N; ++n)
    for (int q = 0; q < ch.Q; ++q) ch.h_.push_back(h[n][q] * Eigen::RowVectorXcd::Ones(M));
  return ch;
}

CommChannel random_channel(int N, int Q, int L, int M, std::uint64_t seed) {
  std::vector<std::vector<CVec>> h(N);
  for (int n = 0; n < N; ++n)
    for (int q = 0; q < Q; ++q) h[n].push_back(testutil::random_matrix(L, 1, seed + 10 * n + q).col(0));
  return flat_channel(h, M);
}

double cosine(const CVec& a, const CVec& b) { return std::abs(a.dot(b)) / (a.norm() * b.norm()); }

}  // namespace

TEST_SUITE("precoding") {

TEST_CASE("single UE: both modes give the normalized conjugate channel") {
  const auto ch = random_channel(3, 1, 4, 2, 100);
  const std::vector<int> tx{0, 2};
  for (auto mode : {PrecoderMode::MR, PrecoderMode::MMSE}) {
    const auto pb = build_comm_precoder(ch, tx, mode, 1e-3, 1e-9);
    for (int row = 0; row < 2; ++row) {
      const CMat G = composite_channel(ch, tx, row);
      const CVec expect = G.col(0).conjugate() / G.col(0).norm();
      CHECK((pb.comm[row].col(0) - expect).norm() < 1e-12);
      CHECK(pb.comm[row].col(0).norm() == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("MMSE tends to MR as the regularization grows") {
  const auto ch = random_channel(2, 3, 4, 1, 200);
  const std::vector<int> tx{0, 1};
  const auto mr = build_comm_precoder(ch, tx, PrecoderMode::MR, 1.0, 1.0);
  double prev = 0.0;
  for (double ratio : {1e-3, 1.0, 1e3, 1e6}) {
    const auto mmse = build_comm_precoder(ch, tx, PrecoderMode::MMSE, 1.0, ratio);
    const double c = cosine(mmse.comm[0].col(1), mr.comm[0].col(1));
    CHECK(c >= prev - 1e-12);
    prev = c;
  }
  CHECK(prev > 1 - 1e-9);
}

TEST_CASE("MMSE zero-forces orthogonal and generic UE channels") {
  CVec g1(4), g2(4);
  g1 << 1, 1, 1, 1;
  g2 << 1, -1, cd(0, 1), cd(0, -1);
  REQUIRE(std::abs(g1.dot(g2)) < 1e-15);
  const auto ch = flat_channel({{g1, g2}}, 1);
  const auto pb = build_comm_precoder(ch, {0}, PrecoderMode::MMSE, 1.0, 1e-6);
  const CVec v1 = pb.comm[0].col(0);
  CHECK(std::abs((g2.transpose() * v1)(0, 0)) <= 1e-10 * g2.norm());

  // Generic channels: leakage falls with the regularization, as the closed
  // form V = G* (G^T G*)^-1 predicts.
  const auto gen = random_channel(3, 2, 2, 1, 300);
  const std::vector<int> tx{0, 1, 2};
  const CMat G = composite_channel(gen, tx, 0);
  const auto zf = build_comm_precoder(gen, tx, PrecoderMode::MMSE, 1.0, 1e-12);
  const CMat E = G.transpose() * zf.comm[0];
  CHECK(std::abs(E(1, 0)) < 1e-9 * std::abs(E(0, 0)));
  CHECK(std::abs(E(0, 1)) < 1e-9 * std::abs(E(1, 1)));
  CMat Vzf = G.conjugate() * (G.transpose() * G.conjugate()).inverse();
  for (int q = 0; q < 2; ++q) CHECK(cosine(Vzf.col(q), zf.comm[0].col(q)) > 1 - 1e-9);
}

TEST_CASE("sensing precoder") {
  SUBCASE("single-pixel ROI gives the conjugate steering vector") {
    Scenario s;
    s.f0 = 10e9;
    s.aps = {testutil::ap_at(0, 0, 4), testutil::ap_at(10, 0, 4, 10e9, kPi / 2)};
    s.roi.center = Vec2(4, 3);
    s.roi.size_x = s.roi.size_y = 0.1;
    s.roi.pitch = 0.2;
    const auto v = build_sensing_precoder(build_roi_channel(s), {0, 1});
    double total = 0.0;
    for (int n = 0; n < 2; ++n) {
      const CVec a = steering_vector(s.aps[n], s.roi.center, s.f0);
      CHECK(cosine(v[n], a.conjugate()) > 1 - 1e-12);
      // a^T v is real positive: the beam is phase-aligned at the pixel.
      const cd gain = (a.transpose() * v[n])(0, 0);
      CHECK(std::abs(std::arg(gain)) < 1e-12);
      total += v[n].squaredNorm();
    }
    CHECK(total == doctest::Approx(1.0));
    // Power split follows 1/R.
    CHECK(v[0].squaredNorm() / v[1].squaredNorm() ==
          doctest::Approx(std::pow((s.roi.center - s.aps[1].position).norm() / 5.0, 2)));
  }

  SUBCASE("stacked normalization and ROI-facing pattern") {
    auto s = testutil::small_scenario(4, 8, 16, 1, 100e6, 3.0);
    const auto roi_h = build_roi_channel(s);
    const auto v = build_sensing_precoder(roi_h, {0, 1, 2, 3});
    double total = 0.0;
    for (const auto& x : v) total += x.squaredNorm();
    CHECK(total == doctest::Approx(1.0));

    for (int n = 0; n < 4; ++n) {
      const Vec2 p = s.aps[n].position;
      const auto px = roi_pixels(s.roi);
      double on = 0.0, off = 0.0;
      for (const auto& x : px.centers) {
        const Vec2 d = x - p;
        const Vec2 rot = p + Vec2(-d.y(), d.x());
        on += std::norm((steering_vector(s.aps[n], x, s.f0).transpose() * v[n])(0, 0));
        off += std::norm((steering_vector(s.aps[n], rot, s.f0).transpose() * v[n])(0, 0));
      }
      CHECK(on > off);
    }
    CHECK_THROWS_AS(build_sensing_precoder({CVec::Zero(2)}, {0}), NumericError);
  }
}

TEST_CASE("transmit grid assembly") {
  auto s = testutil::small_scenario(3, 2, 16, 2, 100e6);
  s.ues = {{Vec2(6, 6)}};
  const auto ch = build_comm_channel(s, 1, 5);
  auto pb = build_comm_precoder(ch, {0, 1, 2}, PrecoderMode::MMSE, s.P, 1e-15);
  pb.sen = build_sensing_precoder(build_roi_channel(s), {0, 1, 2});
  const auto seqs = random_delay_sequences(3, 16, 4);
  std::vector<SensingWaveform> w;
  for (const auto& d : seqs) w.push_back(make_sensing_waveform(d, doppler_sequence(2, 1), s.grid));
  const std::vector<const SensingWaveform*> wp{&w[0], &w[1], &w[2]};
  const auto sym = qam_symbols(1, 16, 2, 4, 8);

  const auto full = assemble_tx(pb, sym, wp, 1.0, s.P, s.grid);
  const auto sen_only = assemble_tx(pb, sym, wp, 0.0, s.P, s.grid);
  for (int t = 0; t < 3; ++t) {
    CMat comm = CMat::Zero(2, 32), sen = CMat::Zero(2, 32);
    for (int k = 0; k < 2; ++k)
      for (int m = 0; m < 16; ++m) {
        comm.col(m + 16 * k) = std::sqrt(s.P) * sym[0](m, k) * pb.comm_vec(t, 0, m);
        sen.col(m + 16 * k) = std::sqrt(s.P) * w[t].ft_grid(m, k) * pb.sen[t];
      }
    CHECK(testutil::rel_err(full.emitted(t), comm) < 1e-14);
    CHECK(testutil::rel_err(sen_only.emitted(t), sen) < 1e-14);
  }
  const auto mid = assemble_tx(pb, sym, wp, 0.3, s.P, s.grid);
  CHECK(testutil::rel_err(mid.emitted(1), 0.3 * full.emitted(1) + 0.7 * sen_only.emitted(1)) < 1e-14);
  CHECK_THROWS_AS(assemble_tx(pb, sym, wp, 1.2, s.P, s.grid), ConfigError);
  CHECK_THROWS_AS(assemble_tx(pb, {}, wp, 0.5, s.P, s.grid), DimensionError);
}

TEST_CASE("network transmit power per subcarrier equals P for one UE at eta = 1") {
  auto s = testutil::small_scenario(4, 2, 8, 1, 100e6);
  s.ues = {{Vec2(7, 3)}};
  const auto ch = build_comm_channel(s, 2, 6);
  auto pb = build_comm_precoder(ch, {0, 1, 2, 3}, PrecoderMode::MMSE, s.P, 1e-15);
  pb.sen = build_sensing_precoder(build_roi_channel(s), {0, 1, 2, 3});
  const auto seqs = random_delay_sequences(4, 8, 4);
  std::vector<SensingWaveform> w;
  for (const auto& d : seqs) w.push_back(make_sensing_waveform(d, CVec::Ones(1), s.grid));
  const std::vector<const SensingWaveform*> wp{&w[0], &w[1], &w[2], &w[3]};
  Eigen::VectorXd power = Eigen::VectorXd::Zero(8);
  const int draws = 2000;
  for (int i = 0; i < draws; ++i) {
    const auto tx = assemble_tx(pb, qam_symbols(1, 8, 1, 16, 50 + i), wp, 1.0, s.P, s.grid);
    for (int t = 0; t < 4; ++t) power += tx.emitted(t).colwise().squaredNorm().transpose();
  }
  for (int m = 0; m < 8; ++m) CHECK(power[m] / draws == doctest::Approx(s.P).epsilon(0.02));
}

}
