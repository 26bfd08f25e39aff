#include "helpers.hpp"

#include "disac/scenario.hpp"

using namespace disac;
using testutil::ap_at;

TEST_SUITE("scenario") {

TEST_CASE("steering vector at broadside and endfire") {
  const auto ap = ap_at(0, 0, 4);
  const CVec a = steering_vector(ap, Vec2(5, 0), 10e9);
  CHECK((a - CVec::Ones(4)).norm() < 1e-12);

  const auto ap2 = ap_at(0, 0, 2);
  const CVec b = steering_vector(ap2, Vec2(0, 3), 10e9);
  CHECK(std::abs(b[0] - 1.0) < 1e-12);
  CHECK(std::abs(b[1] + 1.0) < 1e-12);
}

TEST_CASE("steering vectors separated by 2/L in sine are orthogonal") {
  const int L = 8;
  const auto ap = ap_at(0, 0, L);
  const double s1 = 0.6, s2 = s1 - 2.0 / L;
  auto at = [&](double s) -> Vec2 { return Vec2(std::sqrt(1 - s * s), s) * 7.0; };
  const CVec a1 = steering_vector(ap, at(s1), 10e9);
  const CVec a2 = steering_vector(ap, at(s2), 10e9);
  CHECK(std::abs(a1.dot(a2)) < 1e-12);
  CHECK(local_sin(ap, at(s1)) == doctest::Approx(s1));
}

TEST_CASE("steering follows the AP orientation") {
  const auto ap = ap_at(1, 1, 3, 10e9, kPi / 2);
  const CVec a = steering_vector(ap, Vec2(1, 9), 10e9);  // along the boresight
  CHECK((a - CVec::Ones(3)).norm() < 1e-12);
  CHECK_THROWS_AS(steering_vector(ap, Vec2(1, 1), 10e9), GeometryError);
}

TEST_CASE("bistatic delays") {
  const auto tx = ap_at(0, 0, 1), rx = ap_at(20, 0, 1);
  CHECK(bistatic_delay(tx, rx, Vec2(10, 0)) == doctest::Approx(20.0 / kSpeedOfLight));
  CHECK(bistatic_delay(tx, rx, Vec2(10, 0)) == doctest::Approx(66.71e-9).epsilon(1e-4));
  CHECK(bistatic_delay(tx, tx, Vec2(3, 4)) == doctest::Approx(10.0 / kSpeedOfLight));
  const auto rx2 = ap_at(0, 20, 1);
  CHECK(bistatic_delay(tx, rx2, Vec2(10, 10)) == doctest::Approx(2 * std::sqrt(200.0) / kSpeedOfLight));
  CHECK(bistatic_delay(tx, rx2, Vec2(10, 10)) == doctest::Approx(94.34e-9).epsilon(1e-4));
}

TEST_CASE("delay extrema over the ROI") {
  RegionOfInterest roi;
  roi.center = Vec2(0, 0);
  roi.size_x = roi.size_y = 5.0;
  roi.pitch = 0.05;

  SUBCASE("monostatic") {
    const auto ap = ap_at(0, -10, 1);
    const auto [lo, hi] = roi_delay_extrema(ap, ap, roi);
    const double r1 = 7.5, r2 = std::hypot(2.5, 12.5);
    CHECK(lo == doctest::Approx(2 * r1 / kSpeedOfLight).epsilon(1e-9));
    CHECK(hi == doctest::Approx(2 * r2 / kSpeedOfLight).epsilon(1e-12));
  }

  SUBCASE("bistatic pair against a 1 cm grid scan") {
    const double dtau = 1e-8;  // 100 MHz
    for (auto [a, b] : {std::pair{Vec2(-10, -10), Vec2(10, -10)}, std::pair{Vec2(-10, -10), Vec2(-10, 10)},
                        std::pair{Vec2(-10, 0), Vec2(10, 0)}, std::pair{Vec2(-10, -10), Vec2(0, 10)}}) {
      const auto tx = ap_at(a.x(), a.y(), 1), rx = ap_at(b.x(), b.y(), 1);
      const auto [lo, hi] = roi_delay_extrema(tx, rx, roi);
      double smin = 1e9, smax = 0;
      for (int i = 0; i <= 500; ++i)
        for (int j = 0; j <= 500; ++j) {
          const double t = bistatic_delay(tx, rx, Vec2(-2.5 + 0.01 * i, -2.5 + 0.01 * j));
          smin = std::min(smin, t);
          smax = std::max(smax, t);
        }
      CHECK(std::abs(lo - smin) < dtau / 10);
      CHECK(std::abs(hi - smax) < dtau / 10);
      CHECK(lo <= smin + 1e-15);
      CHECK(lo >= (a - b).norm() / kSpeedOfLight - 1e-15);
    }
  }
}

TEST_CASE("pixel grids") {
  RegionOfInterest roi;
  roi.center = Vec2(0, 0);
  roi.size_x = roi.size_y = 1.0;
  roi.pitch = 0.5;
  auto px = roi_pixels(roi);
  REQUIRE(px.centers.size() == 4);
  CHECK(px.nx == 2);
  CHECK(px.centers[0].x() == doctest::Approx(-0.25));
  CHECK(px.centers[0].y() == doctest::Approx(-0.25));
  CHECK(px.centers[3].x() == doctest::Approx(0.25));
  CHECK(px.centers[3].y() == doctest::Approx(0.25));
  CHECK(px.centers[1].x() == doctest::Approx(0.25));  // x runs fastest
  CHECK(px.centers[1].y() == doctest::Approx(-0.25));

  roi.pitch = 3.0;
  CHECK(roi_pixels(roi).centers.size() == 1);

  roi.size_x = roi.size_y = 5.0;
  roi.pitch = 0.05;
  CHECK(roi_pixels(roi).centers.size() == 10000);

  roi.pitch = 0.0;
  CHECK_THROWS_AS(roi_pixels(roi), ConfigError);
}

TEST_CASE("AP lattices") {
  const auto aps = lattice_aps(9, 4, 10.0, 10e9);
  REQUIRE(aps.size() == 9);
  CHECK(aps[0].position.isApprox(Vec2(-10, -10)));
  CHECK(aps[4].position.norm() < 1e-12);
  CHECK(aps[8].position.isApprox(Vec2(10, 10)));
  for (const auto& ap : aps) {
    CHECK(ap.L == 4);
    CHECK(ap.spacing == doctest::Approx(kSpeedOfLight / 10e9 / 2));
    if (ap.position.norm() > 0) CHECK(local_sin(ap, Vec2(0, 0)) == doctest::Approx(0.0).epsilon(1e-12));
  }
  CHECK(lattice_aps(16, 2, 10.0, 10e9).size() == 16);
  CHECK(lattice_aps(4, 9, 10.0, 10e9)[3].position.isApprox(Vec2(10, 10)));
}

TEST_CASE("scenario validation") {
  auto s = testutil::small_scenario(4, 2, 16, 1, 100e6);
  CHECK_NOTHROW(validate(s));
  s.ues.resize(9);
  CHECK_THROWS_AS(validate(s), ConfigError);
  s.ues.clear();
  s.eta = 1.5;
  CHECK_THROWS_AS(validate(s), ConfigError);
  s.eta = 0.0;
  s.roi.center = s.aps[0].position;
  CHECK_THROWS_AS(validate(s), GeometryError);
}

}
