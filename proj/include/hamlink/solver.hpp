#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hamlink/functional.hpp"
#include "hamlink/matrix.hpp"
#include "hamlink/rng.hpp"

namespace hamlink {

struct SolverConfig {
  long restarts = 64;
  std::uint64_t seed = 42;
  double grad_tol = 1e-8;
  long max_iters = 500;
  double merge_tol = 1e-4;
  double init_radius = 0.0;  // 0 → defaults to 2·ctx.rho
  double backtrack_shrink = 0.5;
  double sufficient_increase = 1e-4;
};

inline void validate(const SolverConfig& cfg) {
  if (cfg.restarts < 2) throw std::invalid_argument("restarts: must be >= 2");
  if (cfg.grad_tol <= 0 || cfg.merge_tol <= 0 || cfg.max_iters <= 0 ||
      cfg.backtrack_shrink <= 0 || cfg.backtrack_shrink >= 1 ||
      cfg.sufficient_increase <= 0 || cfg.init_radius < 0) {
    throw std::invalid_argument("solver config: tolerances must be positive");
  }
}

enum class PointClass { Trivial, ConstantNonzero, Nonconstant };

inline PointClass classify_point(const std::vector<double>& u) {
  double maxabs = 0.0, mean = 0.0;
  for (double x : u) {
    maxabs = std::max(maxabs, std::abs(x));
    mean += x;
  }
  mean /= static_cast<double>(u.size());
  if (maxabs <= 1e-6) return PointClass::Trivial;
  double dev = 0.0;
  for (double x : u) dev = std::max(dev, std::abs(x - mean));
  return dev > 1e-6 ? PointClass::Nonconstant : PointClass::ConstantNonzero;
}

struct MorseIndex {
  long index = 0;      // eigenvalues below −1e−7
  long near_null = 0;  // eigenvalues inside [−1e−7, 1e−7]
  bool caveat = false; // Hessian accuracy flag was set
};

inline MorseIndex morse_index_of(const Matrix& hessian, bool caveat) {
  MorseIndex mi;
  mi.caveat = caveat;
  for (double ev : jacobi_eigenvalues(hessian)) {
    if (ev < -1e-7) ++mi.index;
    else if (ev <= 1e-7) ++mi.near_null;
  }
  return mi;
}

inline MorseIndex morse_index(const std::vector<double>& u, const FunctionalContext& ctx) {
  const auto h = i_hessian(u, ctx);
  return morse_index_of(h.h, h.accuracy_caveat);
}

struct CriticalPointRecord {
  std::vector<double> point;  // u_1..u_M
  double value = 0.0;
  double grad_norm = 0.0;
  long morse_index = 0;
  long near_null = 0;
  bool hessian_caveat = false;
  ResidualReport residual;         // pointwise convention
  ResidualReport residual_summed;  // summed-action convention
  PointClass classification = PointClass::Trivial;
  long orbit_id = -1;

  PeriodicSequence sequence() const { return PeriodicSequence(point); }
};

/// Fully populate a record; grad_norm is recomputed here, independent of
/// whatever the optimizer claimed.
inline CriticalPointRecord make_record(std::vector<double> u, const FunctionalContext& ctx) {
  CriticalPointRecord rec;
  rec.value = i_value(u, ctx);
  rec.grad_norm = gradient_norm(i_gradient(u, ctx));
  const auto h = i_hessian(u, ctx);
  const auto mi = morse_index_of(h.h, h.accuracy_caveat);
  rec.morse_index = mi.index;
  rec.near_null = mi.near_null;
  rec.hessian_caveat = mi.caveat;
  rec.residual = system_residual(u, ctx, ResidualConvention::Pointwise);
  rec.residual_summed = system_residual(u, ctx, ResidualConvention::SummedAction);
  rec.classification = classify_point(u);
  rec.point = std::move(u);
  return rec;
}

namespace detail {

inline long worker_count() {
  if (const char* env = std::getenv("HAMLINK_THREADS")) {
    const long n = std::atol(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<long>(hw);
}

/// Runs fn(i) for i in [0, n) on up to worker_count() threads. Results must
/// be written into caller-owned slots indexed by i, which keeps aggregation
/// independent of scheduling.
inline void parallel_for(long n, const std::function<void(long)>& fn) {
  const long workers = std::min<long>(worker_count(), n);
  if (workers <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (long w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (long i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct AscentRun {
  std::vector<double> endpoint;
  double value = 0.0;
  double grad_norm = 0.0;
  bool converged = false;
};

/// Backtracking gradient ascent, switching to Newton steps on −I when the
/// local Hessian is negative definite. Accepted iterates never decrease I.
inline AscentRun ascend(std::vector<double> u, const FunctionalContext& ctx,
                        const SolverConfig& cfg) {
  AscentRun run;
  double step_hint = 0.25;
  double value = i_value(u, ctx);
  for (long it = 0; it < cfg.max_iters; ++it) {
    auto g = i_gradient(u, ctx);
    const double gn = gradient_norm(g);
    if (gn <= cfg.grad_tol) {
      run.converged = true;
      break;
    }

    // Newton candidate once the gradient is moderate: quadratic convergence
    // near a proper maximum.
    if (gn < 1.0) {
      const auto h = i_hessian(u, ctx);
      const auto eigs = jacobi_eigenvalues(h.h);
      if (eigs.back() < -1e-10) {
        std::vector<double> rhs(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) rhs[i] = -g[i];
        if (auto s = solve_linear(h.h, rhs)) {
          std::vector<double> cand(u.size());
          for (std::size_t i = 0; i < u.size(); ++i) cand[i] = u[i] + (*s)[i];
          const double cv = i_value(cand, ctx);
          if (cv >= value) {
            u = std::move(cand);
            value = cv;
            continue;
          }
        }
      }
    }

    double t = step_hint;
    bool accepted = false;
    for (int k = 0; k < 60; ++k) {
      std::vector<double> cand(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) cand[i] = u[i] + t * g[i];
      if (i_value(cand, ctx) >= value + cfg.sufficient_increase * t * gn * gn) {
        u = std::move(cand);
        value = i_value(u, ctx);
        accepted = true;
        break;
      }
      t *= cfg.backtrack_shrink;
    }
    if (!accepted) break;            // line search stalled at machine scale
    step_hint = std::min(t / cfg.backtrack_shrink, 1e3);
  }
  run.grad_norm = gradient_norm(i_gradient(u, ctx));
  run.converged = run.grad_norm <= cfg.grad_tol;
  run.value = i_value(u, ctx);
  run.endpoint = std::move(u);
  return run;
}

struct AscentPhase {
  std::vector<AscentRun> runs;      // deterministic content in start order
  std::optional<std::size_t> best;  // converged run with largest value
};

inline AscentPhase ascent_phase(const FunctionalContext& ctx, const SolverConfig& cfg) {
  validate(cfg);
  const double init_radius = cfg.init_radius > 0 ? cfg.init_radius : 2.0 * ctx.rho;
  const auto md = static_cast<std::size_t>(ctx.m);

  std::vector<std::vector<double>> starts;
  starts.emplace_back(md, 0.0);
  const auto& e0 = ctx.spectral.basis_y.front();
  for (double sign : {1.0, -1.0}) {
    std::vector<double> v(md);
    for (std::size_t i = 0; i < md; ++i) v[i] = sign * ctx.rho * e0[i];
    starts.push_back(std::move(v));
  }
  for (long r = 0; r < cfg.restarts; ++r) {
    auto rng = RngStream::substream(cfg.seed, static_cast<std::uint64_t>(r));
    const auto dir = rng.unit_vector(md);
    const double rad = init_radius * std::cbrt(rng.uniform01());
    std::vector<double> v(md);
    for (std::size_t i = 0; i < md; ++i) v[i] = rad * dir[i];
    starts.push_back(std::move(v));
  }

  AscentPhase phase;
  phase.runs.resize(starts.size());
  parallel_for(static_cast<long>(starts.size()), [&](long i) {
    phase.runs[static_cast<std::size_t>(i)] =
        ascend(starts[static_cast<std::size_t>(i)], ctx, cfg);
  });

  for (std::size_t i = 0; i < phase.runs.size(); ++i) {
    if (!phase.runs[i].converged) continue;
    if (!phase.best || phase.runs[i].value > phase.runs[*phase.best].value) {
      phase.best = i;
    }
  }
  return phase;
}

}  // namespace detail

/**
 * Multistart ascent toward c₀ = sup I. Starts are {0, ρe, −ρe} plus
 * cfg.restarts random points in the ball of radius init_radius; the returned
 * record is the best converged run. Throws when nothing converges.
 */
inline CriticalPointRecord maximize_I(const FunctionalContext& ctx, const SolverConfig& cfg) {
  const auto phase = detail::ascent_phase(ctx, cfg);
  if (!phase.best) {
    double best_gn = std::numeric_limits<double>::infinity();
    for (const auto& r : phase.runs) best_gn = std::min(best_gn, r.grad_norm);
    throw std::runtime_error("maximize_I: no run converged within max_iters; best gradient norm " +
                             std::to_string(best_gn));
  }
  return make_record(phase.runs[*phase.best].endpoint, ctx);
}

namespace detail {

/// Damped Newton on ∇I = 0. Levenberg shift μ·id doubles from 1e−8 whenever
/// the system is unsolvable or the step fails to shrink the gradient.
inline std::optional<std::vector<double>> newton_root(std::vector<double> u,
                                                      const FunctionalContext& ctx,
                                                      const SolverConfig& cfg) {
  for (long it = 0; it < cfg.max_iters; ++it) {
    auto g = i_gradient(u, ctx);
    const double gn = gradient_norm(g);
    if (gn <= cfg.grad_tol) return u;

    const auto h = i_hessian(u, ctx);
    std::vector<double> rhs(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) rhs[i] = -g[i];

    double mu = 0.0;
    bool stepped = false;
    for (int attempt = 0; attempt < 60 && !stepped; ++attempt) {
      Matrix a = h.h;
      if (mu > 0.0) {
        for (long d = 0; d < a.size(); ++d) a(d, d) += mu;
      }
      if (auto s = solve_linear(a, rhs)) {
        double t = 1.0;
        for (int k = 0; k < 30; ++k) {
          std::vector<double> cand(u.size());
          for (std::size_t i = 0; i < u.size(); ++i) cand[i] = u[i] + t * (*s)[i];
          const double cgn = gradient_norm(i_gradient(cand, ctx));
          if (cgn < gn * (1.0 - 1e-4 * t) || cgn <= cfg.grad_tol) {
            u = std::move(cand);
            stepped = true;
            break;
          }
          t *= 0.5;
        }
      }
      if (!stepped) mu = mu == 0.0 ? 1e-8 : mu * 2.0;
    }
    if (!stepped) return std::nullopt;  // stagnated
  }
  auto g = i_gradient(u, ctx);
  if (gradient_norm(g) <= cfg.grad_tol) return u;
  return std::nullopt;
}

}  // namespace detail

/**
 * Multistart damped Newton on the gradient system. Seeds: every ascent-phase
 * endpoint, ρ·(±e) for 8 random unit e ∈ Y, 8 random points of Z, and 0.
 * Converged points closer than merge_tol are merged (keeping the smallest
 * gradient norm); records come back sorted by descending value,
 * deterministically for a fixed seed.
 */
inline std::vector<CriticalPointRecord> find_critical_points(const FunctionalContext& ctx,
                                                             const SolverConfig& cfg) {
  const auto phase = detail::ascent_phase(ctx, cfg);
  const auto md = static_cast<std::size_t>(ctx.m);

  std::vector<std::vector<double>> seeds;
  seeds.emplace_back(md, 0.0);
  for (const auto& run : phase.runs) seeds.push_back(run.endpoint);
  for (long k = 0; k < 8; ++k) {
    auto rng = RngStream::substream(cfg.seed, 0x59aadd00u + static_cast<std::uint64_t>(k));
    const auto coeff = rng.unit_vector(md - 2);
    const auto e = ctx.spectral.from_y_coords(coeff);
    for (double sign : {1.0, -1.0}) {
      std::vector<double> v(md);
      for (std::size_t i = 0; i < md; ++i) v[i] = sign * ctx.rho * e[i];
      seeds.push_back(std::move(v));
    }
  }
  for (long k = 0; k < 8; ++k) {
    auto rng = RngStream::substream(cfg.seed, 0x2e5dd00u + static_cast<std::uint64_t>(k));
    const double init_radius = cfg.init_radius > 0 ? cfg.init_radius : 2.0 * ctx.rho;
    seeds.push_back(ctx.spectral.from_z_coords(rng.uniform(-init_radius, init_radius),
                                               rng.uniform(-init_radius, init_radius)));
  }

  std::vector<std::optional<std::vector<double>>> roots(seeds.size());
  detail::parallel_for(static_cast<long>(seeds.size()), [&](long i) {
    roots[static_cast<std::size_t>(i)] =
        detail::newton_root(seeds[static_cast<std::size_t>(i)], ctx, cfg);
  });

  // merge in seed order; keep the representative with the smaller gradient norm
  std::vector<std::vector<double>> points;
  std::vector<double> grad_norms;
  for (const auto& root : roots) {
    if (!root) continue;
    const double gn = gradient_norm(i_gradient(*root, ctx));
    if (gn > cfg.grad_tol) continue;  // recheck, independent of the optimizer
    bool merged = false;
    for (std::size_t p = 0; p < points.size(); ++p) {
      double dist2 = 0.0;
      for (std::size_t i = 0; i < md; ++i) {
        const double d = (*root)[i] - points[p][i];
        dist2 += d * d;
      }
      if (std::sqrt(dist2) < cfg.merge_tol) {
        if (gn < grad_norms[p]) {
          points[p] = *root;
          grad_norms[p] = gn;
        }
        merged = true;
        break;
      }
    }
    if (!merged) {
      points.push_back(*root);
      grad_norms.push_back(gn);
    }
  }

  std::vector<CriticalPointRecord> records;
  records.reserve(points.size());
  for (auto& p : points) records.push_back(make_record(std::move(p), ctx));
  std::stable_sort(records.begin(), records.end(),
                   [](const CriticalPointRecord& a, const CriticalPointRecord& b) {
                     if (a.value != b.value) return a.value > b.value;
                     return a.point < b.point;  // lexicographic tie-break
                   });
  return records;
}

/**
 * Groups records into symmetry orbits and assigns orbit ids. Negation applies
 * when the potential is even (it is a symmetry of I itself); cyclic shifts
 * (and negated shifts) apply only between records whose full pointwise
 * residual is certified ≤ residual_cert_tol, because I is not shift-invariant
 * while the difference system is.
 */
inline std::vector<CriticalPointRecord> dedupe_orbits(std::vector<CriticalPointRecord> records,
                                                      const PotentialFlags& flags,
                                                      double merge_tol = 1e-4,
                                                      double residual_cert_tol = 1e-6) {
  const std::size_t n = records.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  auto distance = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      s += d * d;
    }
    return std::sqrt(s);
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& a = records[i].point;
      const auto& b = records[j].point;
      const std::size_t m = a.size();
      bool same = distance(a, b) < merge_tol;
      if (!same && flags.even) {
        std::vector<double> neg(m);
        for (std::size_t k = 0; k < m; ++k) neg[k] = -b[k];
        same = distance(a, neg) < merge_tol;
      }
      const bool certified = records[i].residual.max_abs <= residual_cert_tol &&
                             records[j].residual.max_abs <= residual_cert_tol;
      if (!same && flags.autonomous && certified) {
        for (std::size_t shift = 1; shift < m && !same; ++shift) {
          std::vector<double> sh(m);
          for (std::size_t k = 0; k < m; ++k) sh[k] = b[(k + shift) % m];
          same = distance(a, sh) < merge_tol;
          if (!same && flags.even) {
            for (double& x : sh) x = -x;
            same = distance(a, sh) < merge_tol;
          }
        }
      }
      if (same) parent[find(i)] = find(j);
    }
  }

  // ids in record order: first appearance gets the next id
  std::vector<long> id_of_root(n, -1);
  long next_id = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (id_of_root[r] < 0) id_of_root[r] = next_id++;
    records[i].orbit_id = id_of_root[r];
  }
  return records;
}

}  // namespace hamlink
