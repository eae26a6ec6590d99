#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hamlink/matrix.hpp"
#include "hamlink/norms.hpp"
#include "hamlink/periodic_sequence.hpp"
#include "hamlink/potential.hpp"
#include "hamlink/rng.hpp"
#include "hamlink/spectral.hpp"

namespace hamlink {

/**
 * Everything that pins down the functional
 *
 *   I(u) = Σ_s coeff_a·(Δu_s)² + cross_coeff·Δu_{n0−1}Δu_{n0}
 *        + F(n0, u_{n0−1}, u_{n0}, u_{n0+1}) − G(u),
 *
 *   G(u) = b·λ_min·( Σ_{s=1}^{n0−2} |u_s|^β + Σ_{s=n0+2}^{M} |u_s|^β ),
 *
 * with coeff_a = (b+1)/γ_min and cross_coeff = 2·coeff_a + 1. Immutable
 * after construction and safe for shared concurrent reads.
 */
struct FunctionalContext {
  long m = 0;
  long n0 = 0;
  double b = 0.0;
  double beta = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double delta = 0.0;
  PotentialSpec potential;
  SpectralData spectral;
  double coeff_a = 0.0;
  double cross_coeff = 0.0;
  double c1 = 0.0;   // M^{1/β − 1/2}
  double rho = 0.0;  // (A1) radius: min(√δ, δ)
};

inline FunctionalContext make_context(long m, long n0, double b, double beta,
                                      double d1, double d2, double delta,
                                      PotentialSpec potential) {
  check_n0(m, n0);
  if (b <= 0.0) throw std::invalid_argument("b: must be > 0");
  if (beta <= 2.0) throw std::invalid_argument("beta: must be > 2");
  if (d1 <= 0.0) throw std::invalid_argument("d1: must be > 0");
  if (d2 <= 0.0) throw std::invalid_argument("d2: must be > 0");
  if (delta <= 0.0 || delta > 1.0) throw std::invalid_argument("delta: must be in (0, 1]");
  if (potential.period != m) throw std::invalid_argument("potential: period must equal m");

  FunctionalContext ctx;
  ctx.m = m;
  ctx.n0 = n0;
  ctx.b = b;
  ctx.beta = beta;
  ctx.d1 = d1;
  ctx.d2 = d2;
  ctx.delta = delta;
  ctx.potential = std::move(potential);
  ctx.spectral = decompose(m, n0);
  ctx.coeff_a = (b + 1.0) / ctx.spectral.gamma_min;
  ctx.cross_coeff = 2.0 * ctx.coeff_a + 1.0;
  ctx.c1 = std::pow(static_cast<double>(m), 1.0 / beta - 0.5);
  ctx.rho = std::min(std::sqrt(delta), delta);
  return ctx;
}

namespace detail {

// 0-based storage index for 1-based sequence index n, with wraparound.
inline std::size_t wrap0(long n, long m) {
  long r = (n - 1) % m;
  if (r < 0) r += m;
  return static_cast<std::size_t>(r);
}

inline double at(const std::vector<double>& u, long n) {
  return u[wrap0(n, static_cast<long>(u.size()))];
}

}  // namespace detail

/// The penalty tail G(u) ≥ 0 over indices away from n0.
inline double g_value(const std::vector<double>& u, const FunctionalContext& ctx) {
  double s = 0.0;
  for (long j = 1; j <= ctx.n0 - 2; ++j) s += abs_pow(detail::at(u, j), ctx.beta);
  for (long j = ctx.n0 + 2; j <= ctx.m; ++j) s += abs_pow(detail::at(u, j), ctx.beta);
  return ctx.b * ctx.spectral.lambda_min * s;
}

inline double g_value(const PeriodicSequence& u, const FunctionalContext& ctx) {
  return g_value(u.values(), ctx);
}

inline double i_value(const std::vector<double>& u, const FunctionalContext& ctx) {
  const long m = ctx.m;
  double quad = 0.0;
  for (long n = 1; n <= m; ++n) {
    const double d = detail::at(u, n + 1) - detail::at(u, n);
    quad += d * d;
  }
  const double du_before = detail::at(u, ctx.n0) - detail::at(u, ctx.n0 - 1);
  const double du_after = detail::at(u, ctx.n0 + 1) - detail::at(u, ctx.n0);
  const double f = ctx.potential.eval(ctx.n0, detail::at(u, ctx.n0 - 1),
                                      detail::at(u, ctx.n0), detail::at(u, ctx.n0 + 1));
  return ctx.coeff_a * quad + ctx.cross_coeff * du_before * du_after + f -
         g_value(u, ctx);
}

inline double i_value(const PeriodicSequence& u, const FunctionalContext& ctx) {
  return i_value(u.values(), ctx);
}

/**
 * Analytic gradient of I, assembled from its four parts: the Σ(Δu)² term,
 * the cross term at n0−1..n0+1, the three partials of F, and the −G tail.
 * At n = n0 the quadratic and cross contributions collapse to Δ²u_{n0−1},
 * which is the distinguished-index identity.
 */
inline std::vector<double> i_gradient(const std::vector<double>& u,
                                      const FunctionalContext& ctx) {
  const long m = ctx.m;
  std::vector<double> g(static_cast<std::size_t>(m), 0.0);

  for (long n = 1; n <= m; ++n) {
    const double d2 = detail::at(u, n + 1) - 2.0 * detail::at(u, n) + detail::at(u, n - 1);
    g[detail::wrap0(n, m)] = -2.0 * ctx.coeff_a * d2;
  }

  const double du_before = detail::at(u, ctx.n0) - detail::at(u, ctx.n0 - 1);
  const double du_after = detail::at(u, ctx.n0 + 1) - detail::at(u, ctx.n0);
  const double c = ctx.cross_coeff;
  g[detail::wrap0(ctx.n0 - 1, m)] += -c * du_after;
  g[detail::wrap0(ctx.n0, m)] += c * (du_after - du_before);
  g[detail::wrap0(ctx.n0 + 1, m)] += c * du_before;

  const auto fg = ctx.potential.grad(ctx.n0, detail::at(u, ctx.n0 - 1),
                                     detail::at(u, ctx.n0), detail::at(u, ctx.n0 + 1));
  g[detail::wrap0(ctx.n0 - 1, m)] += fg[0];
  g[detail::wrap0(ctx.n0, m)] += fg[1];
  g[detail::wrap0(ctx.n0 + 1, m)] += fg[2];

  const double glam = ctx.b * ctx.spectral.lambda_min;
  for (long j = 1; j <= ctx.n0 - 2; ++j) {
    g[detail::wrap0(j, m)] -= glam * abs_pow_deriv(detail::at(u, j), ctx.beta);
  }
  for (long j = ctx.n0 + 2; j <= m; ++j) {
    g[detail::wrap0(j, m)] -= glam * abs_pow_deriv(detail::at(u, j), ctx.beta);
  }
  return g;
}

inline PeriodicSequence i_gradient(const PeriodicSequence& u,
                                   const FunctionalContext& ctx) {
  return PeriodicSequence(i_gradient(u.values(), ctx));
}

inline double gradient_norm(const std::vector<double>& g) {
  double s = 0.0;
  for (double x : g) s += x * x;
  return std::sqrt(s);
}

struct HessianResult {
  Matrix h;
  bool accuracy_caveat = false;      // β < 3 with a coordinate near 0
  std::vector<long> flagged_coords;  // 1-based indices
};

/**
 * Central finite differences of the analytic gradient (step 1e−5),
 * symmetrized. For β < 3 the |·|^β curvature is singular at coordinate
 * zeros, so coordinates with |u_s| < 1e−8 are flagged rather than trusted.
 */
inline HessianResult i_hessian(const std::vector<double>& u,
                               const FunctionalContext& ctx,
                               double step = 1e-5) {
  const long m = ctx.m;
  HessianResult out;
  out.h = Matrix(m);
  std::vector<double> up = u, um = u;
  for (long k = 0; k < m; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    up[ks] = u[ks] + step;
    um[ks] = u[ks] - step;
    const auto gp = i_gradient(up, ctx);
    const auto gm = i_gradient(um, ctx);
    for (long i = 0; i < m; ++i) {
      out.h(i, k) = (gp[static_cast<std::size_t>(i)] - gm[static_cast<std::size_t>(i)]) /
                    (2.0 * step);
    }
    up[ks] = u[ks];
    um[ks] = u[ks];
  }
  // symmetrize
  for (long i = 0; i < m; ++i) {
    for (long j = i + 1; j < m; ++j) {
      const double v = 0.5 * (out.h(i, j) + out.h(j, i));
      out.h(i, j) = v;
      out.h(j, i) = v;
    }
  }
  if (ctx.beta < 3.0) {
    for (long k = 0; k < m; ++k) {
      if (std::abs(u[static_cast<std::size_t>(k)]) < 1e-8) {
        out.flagged_coords.push_back(k + 1);
      }
    }
    out.accuracy_caveat = !out.flagged_coords.empty();
  }
  return out;
}

inline HessianResult i_hessian(const PeriodicSequence& u, const FunctionalContext& ctx,
                               double step = 1e-5) {
  return i_hessian(u.values(), ctx, step);
}

/// The closed upper bound [cross_coeff + d2]·λ_max·‖u‖² − min{d1, bλ_min}·C1^β·‖u‖^β.
inline double lemma21_bound(const std::vector<double>& u, const FunctionalContext& ctx) {
  double nrm2 = 0.0;
  for (double x : u) nrm2 += x * x;
  const double nrm = std::sqrt(nrm2);
  const double lead = (ctx.cross_coeff + ctx.d2) * ctx.spectral.lambda_max * nrm2;
  const double tail = std::min(ctx.d1, ctx.b * ctx.spectral.lambda_min) *
                      std::pow(ctx.c1, ctx.beta) * std::pow(nrm, ctx.beta);
  return lead - tail;
}

inline double lemma21_bound(const PeriodicSequence& u, const FunctionalContext& ctx) {
  return lemma21_bound(u.values(), ctx);
}

// --- coercivity probe -------------------------------------------------------

struct CoercivitySample {
  long direction = 0;
  double radius = 0.0;
  double i_value = 0.0;
  double bound = 0.0;
  bool bound_ok = true;
};

struct CoercivityReport {
  std::vector<CoercivitySample> samples;
  double empirical_sup = 0.0;  // max sampled I: stands in for the M̃ of the upper bound
  bool decay_ok = false;       // every direction: value at largest radius < value at smallest
  bool bounds_checked = false; // true when the potential is (D4)-shaped
  bool bounds_ok = true;
};

/**
 * Evaluates I along random rays. For (D4)-shaped potentials the Lemma 2.1
 * bound is asserted sample-by-sample; otherwise it is recorded as a
 * diagnostic only.
 */
inline CoercivityReport coercivity_probe(const FunctionalContext& ctx,
                                         long directions,
                                         const std::vector<double>& radii,
                                         std::uint64_t seed = 42) {
  if (directions <= 0) throw std::invalid_argument("directions: must be positive");
  if (radii.size() < 2 || !std::is_sorted(radii.begin(), radii.end()) ||
      radii.front() > 1.0 || radii.back() < 1e3) {
    throw std::invalid_argument("radii: must be increasing and span [1, 1e3]");
  }

  CoercivityReport rep;
  rep.bounds_checked = ctx.potential.d4_form;
  rep.decay_ok = true;
  bool first = true;
  for (long d = 0; d < directions; ++d) {
    auto rng = RngStream::substream(seed, static_cast<std::uint64_t>(d));
    const auto dir = rng.unit_vector(static_cast<std::size_t>(ctx.m));
    double first_val = 0.0, last_val = 0.0;
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
      std::vector<double> u(dir.size());
      for (std::size_t i = 0; i < u.size(); ++i) u[i] = radii[ri] * dir[i];
      CoercivitySample s;
      s.direction = d;
      s.radius = radii[ri];
      s.i_value = i_value(u, ctx);
      s.bound = lemma21_bound(u, ctx);
      s.bound_ok = s.i_value <= s.bound + 1e-9 * (1.0 + std::abs(s.i_value));
      if (rep.bounds_checked && !s.bound_ok) rep.bounds_ok = false;
      if (ri == 0) first_val = s.i_value;
      if (ri + 1 == radii.size()) last_val = s.i_value;
      if (first) {
        rep.empirical_sup = s.i_value;
        first = false;
      } else {
        rep.empirical_sup = std::max(rep.empirical_sup, s.i_value);
      }
      rep.samples.push_back(s);
    }
    if (!(last_val < first_val)) rep.decay_ok = false;
  }
  return rep;
}

// --- system residual --------------------------------------------------------

enum class ResidualConvention { Pointwise, SummedAction };

/**
 * Residual of Δ²u_{n−1} + ∇_{u_n}F = 0 at every index. The pointwise
 * convention takes only the middle-argument partial ∂F/∂y at n; the
 * summed-action convention adds the neighbor partials ∂F/∂z at n−1 and
 * ∂F/∂x at n+1, each at that index's own argument triple.
 */
struct ResidualReport {
  std::vector<double> per_index;  // r_1..r_M
  double max_abs = 0.0;
  double at_n0 = 0.0;
  ResidualConvention convention = ResidualConvention::Pointwise;
};

inline ResidualReport system_residual(const std::vector<double>& u,
                                      const PotentialSpec& f,
                                      ResidualConvention convention,
                                      long n0) {
  const long m = f.period;
  ResidualReport rep;
  rep.convention = convention;
  rep.per_index.resize(static_cast<std::size_t>(m));
  for (long n = 1; n <= m; ++n) {
    const double d2 = detail::at(u, n + 1) - 2.0 * detail::at(u, n) + detail::at(u, n - 1);
    double r = d2;
    const auto g_here = f.grad(n, detail::at(u, n - 1), detail::at(u, n), detail::at(u, n + 1));
    r += g_here[1];
    if (convention == ResidualConvention::SummedAction) {
      const auto g_prev =
          f.grad(n - 1, detail::at(u, n - 2), detail::at(u, n - 1), detail::at(u, n));
      const auto g_next =
          f.grad(n + 1, detail::at(u, n), detail::at(u, n + 1), detail::at(u, n + 2));
      r += g_prev[2] + g_next[0];
    }
    rep.per_index[detail::wrap0(n, m)] = r;
  }
  rep.max_abs = 0.0;
  for (double r : rep.per_index) rep.max_abs = std::max(rep.max_abs, std::abs(r));
  rep.at_n0 = rep.per_index[detail::wrap0(n0, m)];
  return rep;
}

inline ResidualReport system_residual(const PeriodicSequence& u, const PotentialSpec& f,
                                      ResidualConvention convention, long n0) {
  return system_residual(u.values(), f, convention, n0);
}

inline ResidualReport system_residual(const std::vector<double>& u,
                                      const FunctionalContext& ctx,
                                      ResidualConvention convention) {
  return system_residual(u, ctx.potential, convention, ctx.n0);
}

}  // namespace hamlink
