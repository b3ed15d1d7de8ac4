#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "horolab/common.hpp"

namespace horolab {

/// Seeded RNG with hand-rolled variate extraction. std::mt19937_64 is fully
/// specified by the standard, but the std distributions are not; reports must
/// be byte-identical across platforms, so all doubles come from the raw
/// 64-bit stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). Multiply-shift; modulo bias is below any
  /// tolerance used here and the result stays platform-deterministic.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (next() & 1u) != 0; }

  /// Standard normal via Box-Muller (deterministic given the stream).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  Complex unit_complex() {
    const double phi = uniform(0.0, 6.283185307179586);
    return {std::cos(phi), std::sin(phi)};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace horolab
