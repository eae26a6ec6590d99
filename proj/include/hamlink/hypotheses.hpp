#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "hamlink/potential.hpp"
#include "hamlink/rng.hpp"

namespace hamlink {

struct HypothesisConstants {
  double b = 0.0;
  double delta = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double beta = 0.0;
};

/// Grid/sample layout for the checkers. Seeded, so every verdict is replayable.
struct SamplingPlan {
  long grid = 9;             // per-axis grid for the (D2) ball
  long samples = 400;        // random samples per residue class for (D1)/(D3)/(D4)
  double range_min = 1e-3;   // log-uniform magnitude range for (D3)/(D4)
  double range_max = 1e3;
  std::uint64_t seed = 42;
};

struct HypothesisViolation {
  long n = 0;
  double x = 0.0, y = 0.0, z = 0.0;
  double lhs = 0.0, rhs = 0.0;
};

/**
 * Verdict of one hypothesis over one sampled set. "pass" means pass on the
 * sample, not a proof; a fail carries replayable witnesses.
 */
struct HypothesisReport {
  std::string id;  // D1 | D2 | D3 | D4
  HypothesisConstants constants;
  long sample_count = 0;
  std::vector<HypothesisViolation> violations;
  bool pass() const { return violations.empty(); }
};

namespace detail {

// Log-uniform magnitude with random sign.
inline double log_uniform_signed(RngStream& rng, double lo, double hi) {
  const double mag = std::exp(rng.uniform(std::log(lo), std::log(hi)));
  return rng.uniform01() < 0.5 ? -mag : mag;
}

}  // namespace detail

/**
 * Sampling-based certification of (D1)–(D4). Failure is a report verdict,
 * never an exception. All four reports are always produced; which of them
 * gate a certificate is the caller's concern.
 */
inline std::vector<HypothesisReport> check_hypotheses(const PotentialSpec& f,
                                                      const HypothesisConstants& constants,
                                                      const SamplingPlan& plan) {
  const long m = f.period;
  const double lam =
      2.0 * (1.0 - std::cos(2.0 * std::numbers::pi / static_cast<double>(m)));
  std::vector<HypothesisReport> reports;

  // (D1): F(n+M, x, y, z) = F(n, x, y, z), sampled, relative tolerance 1e−12.
  {
    HypothesisReport rep;
    rep.id = "D1";
    rep.constants = constants;
    auto rng = RngStream::substream(plan.seed, 1);
    for (long n = 1; n <= m; ++n) {
      for (long s = 0; s < plan.samples; ++s) {
        const double x = detail::log_uniform_signed(rng, plan.range_min, plan.range_max);
        const double y = detail::log_uniform_signed(rng, plan.range_min, plan.range_max);
        const double z = detail::log_uniform_signed(rng, plan.range_min, plan.range_max);
        const double lhs = f.eval(n + m, x, y, z);
        const double rhs = f.eval(n, x, y, z);
        ++rep.sample_count;
        if (std::abs(lhs - rhs) > 1e-12 * (1.0 + std::abs(rhs))) {
          rep.violations.push_back({n, x, y, z, lhs, rhs});
        }
      }
    }
    reports.push_back(std::move(rep));
  }

  // (D2): F ≥ −b·λ_min·(x²+y²+z²) on a grid of the ball x²+y²+z² ≤ δ.
  {
    HypothesisReport rep;
    rep.id = "D2";
    rep.constants = constants;
    const double r = std::sqrt(constants.delta);
    const long g = plan.grid;
    for (long n = 1; n <= m; ++n) {
      for (long i = 0; i < g; ++i) {
        for (long j = 0; j < g; ++j) {
          for (long k = 0; k < g; ++k) {
            const double x = -r + 2.0 * r * static_cast<double>(i) / static_cast<double>(g - 1);
            const double y = -r + 2.0 * r * static_cast<double>(j) / static_cast<double>(g - 1);
            const double z = -r + 2.0 * r * static_cast<double>(k) / static_cast<double>(g - 1);
            if (x * x + y * y + z * z > constants.delta) continue;
            const double lhs = f.eval(n, x, y, z);
            const double rhs = -constants.b * lam * (x * x + y * y + z * z);
            ++rep.sample_count;
            if (lhs < rhs - 1e-12 * (1.0 + std::abs(rhs))) {
              rep.violations.push_back({n, x, y, z, lhs, rhs});
            }
          }
        }
      }
    }
    reports.push_back(std::move(rep));
  }

  // (D3): F ≤ Σ_k (−d1|·_k|^β + d2|·_k|²) over log-spaced magnitudes.
  // (D4): the same bound with the d2 term absent.
  for (int which = 3; which <= 4; ++which) {
    HypothesisReport rep;
    rep.id = which == 3 ? "D3" : "D4";
    rep.constants = constants;
    auto rng = RngStream::substream(plan.seed, static_cast<std::uint64_t>(which));
    for (long n = 1; n <= m; ++n) {
      for (long s = 0; s < plan.samples; ++s) {
        const double scale = std::exp(rng.uniform(std::log(plan.range_min), std::log(plan.range_max)));
        const auto dir = rng.unit_vector(3);
        const double x = scale * dir[0];
        const double y = scale * dir[1];
        const double z = scale * dir[2];
        const double lhs = f.eval(n, x, y, z);
        double rhs = 0.0;
        for (double v : {x, y, z}) {
          rhs += -constants.d1 * abs_pow(v, constants.beta);
          if (which == 3) rhs += constants.d2 * v * v;
        }
        ++rep.sample_count;
        if (lhs > rhs + 1e-12 * (1.0 + std::abs(rhs))) {
          rep.violations.push_back({n, x, y, z, lhs, rhs});
        }
      }
    }
    reports.push_back(std::move(rep));
  }

  return reports;
}

}  // namespace hamlink
