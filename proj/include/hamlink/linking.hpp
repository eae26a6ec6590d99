#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hamlink/functional.hpp"
#include "hamlink/rng.hpp"
#include "hamlink/solver.hpp"

namespace hamlink {

/**
 * Sampled verification of the linking geometry with X₂ = Y and X₁ = Z:
 * (A1) I ≥ σ = ½·λ_min·ρ² on ∂B_ρ ∩ Y, and (A2) I ≤ 0 on ∂Q for
 * Q = (B̄_R ∩ Z) ⊕ {re : 0 < r < R}, for a direction e ∈ Y and its mirror −e.
 * The witnesses stored for each extreme make the verdicts replayable.
 */
struct LinkingReport {
  double sigma = 0.0;
  double rho = 0.0;
  double r_outer_plus = 0.0;   // found R for +e (0 when the search failed)
  double r_outer_minus = 0.0;  // found R for −e
  double a1_min_on_sphere = 0.0;
  std::vector<double> a1_witness;
  double a2_max_on_boundary = 0.0;  // max over both signs at their found radii
  std::vector<double> a2_witness;
  double z_face_max = 0.0;  // max of I over the sampled r = 0 face (inside Z)
  std::vector<double> e_direction;
  bool a1_ok = false;
  bool a2_ok = false;
  long samples = 0;
};

namespace detail {

struct BoundarySweep {
  double max_value = -std::numeric_limits<double>::infinity();
  std::vector<double> witness;
  double z_face_max = -std::numeric_limits<double>::infinity();
};

/// Max of I over the three faces of ∂Q at radius R: the r=0 disc in Z, the
/// r=R cap, and the cylindrical side ‖z‖ = R.
inline BoundarySweep sweep_boundary(const FunctionalContext& ctx,
                                    const std::vector<double>& e, double sign,
                                    double big_r, long samples, std::uint64_t seed) {
  BoundarySweep sweep;
  const auto md = static_cast<std::size_t>(ctx.m);
  auto rng = RngStream::substream(seed, 0xb0d5u);
  const long per_face = std::max<long>(samples / 3, 1);
  auto consider = [&](const std::vector<double>& u, bool z_face) {
    const double v = i_value(u, ctx);
    if (v > sweep.max_value) {
      sweep.max_value = v;
      sweep.witness = u;
    }
    if (z_face) sweep.z_face_max = std::max(sweep.z_face_max, v);
  };

  for (long s = 0; s < per_face; ++s) {
    // r = 0 face: the closed disc of radius R inside Z
    const auto zdir = rng.unit_vector(2);
    const double zr = big_r * std::sqrt(rng.uniform01());
    auto u = ctx.spectral.from_z_coords(zr * zdir[0], zr * zdir[1]);
    consider(u, true);

    // r = R cap
    const auto zdir2 = rng.unit_vector(2);
    const double zr2 = big_r * std::sqrt(rng.uniform01());
    u = ctx.spectral.from_z_coords(zr2 * zdir2[0], zr2 * zdir2[1]);
    for (std::size_t i = 0; i < md; ++i) u[i] += sign * big_r * e[i];
    consider(u, false);

    // cylindrical side ‖z‖ = R, 0 ≤ r ≤ R
    const auto zdir3 = rng.unit_vector(2);
    const double r = big_r * rng.uniform01();
    u = ctx.spectral.from_z_coords(big_r * zdir3[0], big_r * zdir3[1]);
    for (std::size_t i = 0; i < md; ++i) u[i] += sign * r * e[i];
    consider(u, false);
  }
  return sweep;
}

}  // namespace detail

inline LinkingReport verify_linking_geometry(const FunctionalContext& ctx,
                                             const SolverConfig& cfg, long samples) {
  if (samples < 1000) throw std::invalid_argument("samples: must be >= 1000");

  LinkingReport rep;
  rep.samples = samples;
  rep.rho = ctx.rho;
  rep.sigma = 0.5 * ctx.spectral.lambda_min * ctx.rho * ctx.rho;
  const auto md = static_cast<std::size_t>(ctx.m);

  // (A1): sampled min of I over ∂B_ρ ∩ Y
  {
    auto rng = RngStream::substream(cfg.seed, 0xa1u);
    double best = std::numeric_limits<double>::infinity();
    for (long s = 0; s < samples; ++s) {
      const auto coeff = rng.unit_vector(md - 2);
      auto u = ctx.spectral.from_y_coords(coeff);
      for (double& x : u) x *= ctx.rho;
      const double v = i_value(u, ctx);
      if (v < best) {
        best = v;
        rep.a1_witness = u;
      }
    }
    rep.a1_min_on_sphere = best;
    rep.a1_ok = best >= rep.sigma - 1e-9;
  }

  // (A2): outward search over R = 2ρ, 4ρ, … for both e and −e
  {
    auto rng = RngStream::substream(cfg.seed, 0xa2u);
    const auto coeff = rng.unit_vector(md - 2);
    rep.e_direction = ctx.spectral.from_y_coords(coeff);

    rep.a2_max_on_boundary = -std::numeric_limits<double>::infinity();
    rep.z_face_max = -std::numeric_limits<double>::infinity();
    bool both_ok = true;
    for (double sign : {1.0, -1.0}) {
      bool found = false;
      for (double big_r = 2.0 * ctx.rho; big_r <= 65536.0 * ctx.rho; big_r *= 2.0) {
        const auto sweep = detail::sweep_boundary(ctx, rep.e_direction, sign, big_r,
                                                  samples, cfg.seed);
        rep.z_face_max = std::max(rep.z_face_max, sweep.z_face_max);
        const bool last_attempt = 2.0 * big_r > 65536.0 * ctx.rho;
        if (sweep.max_value <= 1e-9 || last_attempt) {
          if (sweep.max_value > rep.a2_max_on_boundary) {
            rep.a2_max_on_boundary = sweep.max_value;
            rep.a2_witness = sweep.witness;
          }
        }
        if (sweep.max_value <= 1e-9) {
          if (sign > 0) rep.r_outer_plus = big_r;
          else rep.r_outer_minus = big_r;
          found = true;
          break;
        }
      }
      if (!found) both_ok = false;
    }
    rep.a2_ok = both_ok;
  }
  return rep;
}

}  // namespace hamlink
