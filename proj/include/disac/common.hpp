#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace disac {

using cd = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Vec2 = Eigen::Vector2d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Error taxonomy. Everything derives from std::runtime_error so callers that
// only care about "it failed" can catch one type.
struct ConfigError : std::runtime_error { using std::runtime_error::runtime_error; };
struct GeometryError : std::runtime_error { using std::runtime_error::runtime_error; };
struct DimensionError : std::runtime_error { using std::runtime_error::runtime_error; };
struct FeasibilityError : std::runtime_error { using std::runtime_error::runtime_error; };
struct RankError : std::runtime_error { using std::runtime_error::runtime_error; };
struct NumericError : std::runtime_error { using std::runtime_error::runtime_error; };
struct UndefinedEntropyError : std::runtime_error { using std::runtime_error::runtime_error; };
struct ConstraintError : std::runtime_error { using std::runtime_error::runtime_error; };
struct BudgetError : std::runtime_error { using std::runtime_error::runtime_error; };
struct IoError : std::runtime_error { using std::runtime_error::runtime_error; };

/// Round half away from zero. Used for every delay-to-bin conversion so that
/// waveform design and back-projection agree on bin membership.
inline long round_half_away(double x) {
  return static_cast<long>(x < 0.0 ? -std::floor(-x + 0.5) : std::floor(x + 0.5));
}

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double to_db(double linear) { return 10.0 * std::log10(linear); }

/// Counter-based seed split (splitmix64 finalizer over a mixed key). Gives
/// independent, order-free substreams for (master, i, j, k) tuples.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t a = 0, std::uint64_t b = 0,
                                std::uint64_t c = 0) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(master);
  h = mix(h ^ a);
  h = mix(h ^ (b + 0x632be59bd9b4e019ULL));
  h = mix(h ^ (c + 0x8cb92ba72f3d8dd7ULL));
  return h;
}

using Rng = std::mt19937_64;

/// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
inline cd complex_gaussian(Rng& rng, double variance = 1.0) {
  std::normal_distribution<double> n(0.0, std::sqrt(variance / 2.0));
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace disac
