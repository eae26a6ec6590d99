#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace hamlink {

/**
 * Seeded random stream with hand-rolled uniform/gaussian draws so the byte
 * stream depends only on (seed, call sequence), not on library distribution
 * internals. Substreams derive as seed ⊕ index, which keeps stream k stable
 * when more streams are added.
 */
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static RngStream substream(std::uint64_t seed, std::uint64_t index) {
    return RngStream(seed ^ index);
  }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Box–Muller; one value per call, no caching.
  double gaussian() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  std::vector<double> gaussian_vector(std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = gaussian();
    return v;
  }

  /// Uniformly distributed direction on the unit sphere of R^n.
  std::vector<double> unit_vector(std::size_t n) {
    std::vector<double> v;
    double nrm = 0.0;
    do {
      v = gaussian_vector(n);
      nrm = 0.0;
      for (double x : v) nrm += x * x;
      nrm = std::sqrt(nrm);
    } while (nrm < 1e-12);
    for (double& x : v) x /= nrm;
    return v;
  }

  std::uint64_t raw() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

}  // namespace hamlink
