#include "helpers.hpp"

#include "disac/grid.hpp"

using namespace disac;
using testutil::random_matrix;
using testutil::rel_err;

namespace {

// Direct double sums for both transforms.
CGrid ft_to_dd_sum(const CGrid& x) {
  const long M = x.rows(), K = x.cols();
  CGrid y = CGrid::Zero(M, K);
  for (long l = 0; l < M; ++l)
    for (long p = 0; p < K; ++p)
      for (long m = 0; m < M; ++m)
        for (long k = 0; k < K; ++k)
          y(l, p) += x(m, k) * std::polar(1.0, 2 * kPi * (double(m * l) / M - double(k * p) / K));
  return y;
}

CGrid dd_to_ft_sum(const CGrid& x) {
  const long M = x.rows(), K = x.cols();
  CGrid y = CGrid::Zero(M, K);
  for (long m = 0; m < M; ++m)
    for (long k = 0; k < K; ++k)
      for (long l = 0; l < M; ++l)
        for (long p = 0; p < K; ++p)
          y(m, k) += x(l, p) * std::polar(1.0, 2 * kPi * (-double(m * l) / M + double(k * p) / K));
  return y / double(M * K);
}

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("grid spacings follow from bandwidth and size") {
  const auto g = make_grid(128, 1, 100e6);
  CHECK(g.delta_f == doctest::Approx(781.25e3));
  CHECK(g.delta_tau == doctest::Approx(10e-9));

  const auto g2 = make_grid(512, 4, 100e6);
  CHECK(g2.T == doctest::Approx(5.12e-6));
  CHECK(g2.delta_nu == doctest::Approx(1.0 / (4 * 5.12e-6)));
  CHECK(g2.delta_nu == doctest::Approx(48.828125e3));

  const auto g3 = make_grid(4096, 1, 100e6);
  CHECK(g3.delta_f == doctest::Approx(24.414e3).epsilon(1e-4));

  const auto g4 = make_grid(64, 2, 10e6, 0.25);
  CHECK(g4.T == doctest::Approx(1.25 * 64 / 10e6));
}

TEST_CASE("grid construction rejects bad arguments") {
  CHECK_THROWS_AS(make_grid(0, 1, 1e6), ConfigError);
  CHECK_THROWS_AS(make_grid(8, 0, 1e6), ConfigError);
  CHECK_THROWS_AS(make_grid(8, 1, 0.0), ConfigError);
  CHECK_THROWS_AS(make_grid(8, 1, 1e6, 1.0), ConfigError);
  CHECK_THROWS_AS(make_grid(8, 1, 1e6, -0.1), ConfigError);
}

TEST_CASE("signed index accessors") {
  const auto g = make_grid(8, 4, 1e6);
  CHECK(g.subcarrier(0) == 0);
  CHECK(g.subcarrier(3) == 3);
  CHECK(g.subcarrier(4) == -4);
  CHECK(g.subcarrier(7) == -1);
  for (int row = 0; row < 8; ++row) CHECK(g.row_of_subcarrier(g.subcarrier(row)) == row);
  CHECK(g.doppler(2) == -2);
  CHECK(g.doppler(3) == -1);
  for (int col = 0; col < 4; ++col) CHECK(g.col_of_doppler(g.doppler(col)) == col);
}

TEST_CASE("ft_to_dd of zeros and of an impulse") {
  const auto g = make_grid(8, 4, 1e6);
  CHECK(ft_to_dd(CGrid::Zero(8, 4), g).norm() == 0.0);
  CGrid imp = CGrid::Zero(8, 4);
  imp(0, 0) = 1.0;
  const CGrid y = ft_to_dd(imp, g);
  CHECK((y - CGrid::Ones(8, 4)).norm() < 1e-14);
}

TEST_CASE("dd_to_ft of a constant and of a shifted impulse") {
  const auto g = make_grid(8, 4, 1e6);
  const CGrid y = dd_to_ft(CGrid::Ones(8, 4), g);
  CHECK(std::abs(y(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(y.array().abs2().sum() - 1.0) < 1e-14);

  const int l0 = 3, p0 = 1;
  CGrid imp = CGrid::Zero(8, 4);
  imp(l0, p0) = 1.0;
  const CGrid x = dd_to_ft(imp, g) * 32.0;
  for (int m = 0; m < 8; ++m)
    for (int k = 0; k < 4; ++k)
      CHECK(std::abs(x(m, k) - std::polar(1.0, 2 * kPi * (-m * l0 / 8.0 + k * p0 / 4.0))) < 1e-13);
}

TEST_CASE("transforms match the double-sum definitions") {
  const auto g = make_grid(8, 4, 1e6);
  const CGrid x = random_matrix(8, 4, 11);
  CHECK(rel_err(ft_to_dd(x, g), ft_to_dd_sum(x)) < 1e-12);
  CHECK(rel_err(dd_to_ft(x, g), dd_to_ft_sum(x)) < 1e-12);
}

TEST_CASE("round trips are identities") {
  for (auto [M, K] : {std::pair{8, 4}, std::pair{64, 1}, std::pair{30, 6}}) {
    const auto g = make_grid(M, K, 1e6);
    const CGrid x = random_matrix(M, K, 5 + M);
    CHECK(rel_err(ft_to_dd(dd_to_ft(x, g), g), x) < 1e-9);
    CHECK(rel_err(dd_to_ft(ft_to_dd(x, g), g), x) < 1e-9);
    CHECK(ft_to_dd(x, g).squaredNorm() == doctest::Approx(M * K * x.squaredNorm()).epsilon(1e-10));
  }
}

TEST_CASE("transforms reject mismatched grids") {
  const auto g = make_grid(8, 4, 1e6);
  CHECK_THROWS_AS(ft_to_dd(CGrid::Zero(8, 3), g), DimensionError);
  CHECK_THROWS_AS(dd_to_ft(CGrid::Zero(4, 4), g), DimensionError);
}

TEST_CASE("periodic cross-correlation") {
  CGrid imp = CGrid::Zero(6, 4);
  imp(0, 0) = 1.0;
  const CGrid r = periodic_xcorr_2d(imp, imp);
  CHECK(std::abs(r(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(r.array().abs2().sum() - 1.0) < 1e-13);

  Rng rng(3);
  CGrid u(5, 3);
  for (long i = 0; i < u.size(); ++i) u(i) = std::polar(1.0, uniform(rng, 0, 2 * kPi));
  CHECK(std::abs(periodic_xcorr_2d(u, u)(0, 0) - 15.0) < 1e-12);

  const CGrid a = random_matrix(4, 4, 21), b = random_matrix(4, 4, 22);
  CHECK(rel_err(periodic_xcorr_2d(a, b), periodic_xcorr_2d_direct(a, b)) < 1e-12);

  const CGrid c = random_matrix(16, 4, 23), d = random_matrix(16, 4, 24);
  const CGrid rcd = periodic_xcorr_2d_direct(c, d);
  CHECK(rel_err(periodic_xcorr_2d(c, d), rcd) < 1e-12);
  // Entry definition: sum conj(c[l', p']) d[l + l', p + p'].
  cd v = 0.0;
  for (int l = 0; l < 16; ++l)
    for (int p = 0; p < 4; ++p) v += std::conj(c(l, p)) * d((l + 5) % 16, (p + 3) % 4);
  CHECK(std::abs(rcd(5, 3) - v) < 1e-12);

  CHECK_THROWS_AS(periodic_xcorr_2d(a, c), DimensionError);
}

TEST_CASE("1D periodic cross-correlation matches the 2D one on a column") {
  const CGrid a = random_matrix(12, 1, 31), b = random_matrix(12, 1, 32);
  const CVec r1 = periodic_xcorr(a.col(0), b.col(0));
  const CGrid r2 = periodic_xcorr_2d_direct(a, b);
  CHECK(rel_err(r1, r2.col(0)) < 1e-12);
}

}
