// Acceptance suite: one binary, one pass/fail line per criterion.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "hamlink/hamlink.hpp"

using namespace hamlink;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > budget_seconds) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  std::printf("[%s] criterion %d: %s (%.2f s%s%s)\n", ok ? "PASS" : "FAIL", number,
              label.c_str(), dt, detail.empty() ? "" : " — ", detail.c_str());
  if (!ok) ++failures;
}

FunctionalContext canonical(long restarts_hint = 64) {
  (void)restarts_hint;
  return make_context(6, 3, 1.0, 3.0, 1.0, 0.01, 0.25, example31_potential(1.0, 3.0, 6));
}

FunctionalContext example_ctx(long m, double beta) {
  const double lam = 2.0 * (1.0 - std::cos(2.0 * std::numbers::pi / double(m)));
  return make_context(m, 3, 1.0, beta, lam, 0.01, 0.25, example31_potential(1.0, beta, m));
}

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

int main() {
  criterion(1, "spectral closed forms for M = 5..64", 5.0, [](std::string& detail) {
    for (long m = 5; m <= 64; ++m) {
      const auto closed = spectrum_A(m);
      const auto numeric = jacobi_eigenvalues(build_A(m));
      for (std::size_t k = 0; k < numeric.size(); ++k) {
        if (std::abs(numeric[k] - closed.eigenvalues[k]) > 1e-10) {
          detail = "A spectrum drift at M=" + std::to_string(m);
          return false;
        }
      }
      const double lam = 2.0 * (1.0 - std::cos(2.0 * std::numbers::pi / double(m)));
      if (std::abs(closed.lambda_min - lam) > 1e-14) {
        detail = "lambda_min formula at M=" + std::to_string(m);
        return false;
      }
      for (long n0 : {3L, m - 2L}) {
        const auto l = build_L(m, n0);  // throws if the spectrum is off
        const auto eigs = jacobi_eigenvalues(l.l_matrix);
        if (std::abs(eigs.front()) > 1e-10 || std::abs(eigs.back() - 2.0) > 1e-10 ||
            std::abs(l.gamma_min - 1.0) > 1e-10) {
          detail = "L spectrum at M=" + std::to_string(m);
          return false;
        }
        for (std::size_t k = 1; k + 1 < eigs.size(); ++k) {
          if (std::abs(eigs[k] - 1.0) > 1e-10) {
            detail = "L bulk eigenvalue at M=" + std::to_string(m);
            return false;
          }
        }
      }
    }
    return true;
  });

  criterion(2, "analytic gradient vs central differences", 10.0, [](std::string& detail) {
    for (long m : {5L, 6L, 10L}) {
      for (double beta : {2.5, 3.0, 4.0}) {
        const auto ctx = example_ctx(m, beta);
        auto rng = RngStream(1002);
        for (int rep = 0; rep < 200; ++rep) {
          std::vector<double> u(static_cast<std::size_t>(m));
          for (double& x : u) x = 1.5 * rng.gaussian();
          const auto g = i_gradient(u, ctx);
          for (std::size_t k = 0; k < u.size(); ++k) {
            auto up = u, um = u;
            up[k] += 1e-6;
            um[k] -= 1e-6;
            const double fd = (i_value(up, ctx) - i_value(um, ctx)) / 2e-6;
            if (std::abs(g[k] - fd) > 1e-6 * (1.0 + std::abs(fd))) {
              detail = "M=" + std::to_string(m) + " beta=" + std::to_string(beta);
              return false;
            }
          }
        }
      }
    }
    return true;
  });

  criterion(3, "distinguished-index identity at n0", 2.0, [](std::string& detail) {
    const auto ctx = canonical();
    auto rng = RngStream(1003);
    for (int rep = 0; rep < 500; ++rep) {
      std::vector<double> u(6);
      for (double& x : u) x = 2.0 * rng.gaussian();
      const auto g = i_gradient(u, ctx);
      const PeriodicSequence seq(u);
      const double d2 = seq[4] - 2.0 * seq[3] + seq[2];
      const auto fg = ctx.potential.grad(3, seq[2], seq[3], seq[4]);
      double nrm = 0.0;
      for (double x : u) nrm += x * x;
      const double tol = 1e-9 * (1.0 + std::pow(std::sqrt(nrm), ctx.beta));
      if (std::abs(g[2] - (d2 + fg[1])) > tol) {
        detail = "identity violated at sample " + std::to_string(rep);
        return false;
      }
    }
    return true;
  });

  criterion(4, "Lemma 2.1 bound and coercive decay", 10.0, [](std::string& detail) {
    const auto ctx = canonical();
    auto rng = RngStream(1004);
    for (int rep = 0; rep < 10000; ++rep) {
      const double r = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
      auto u = rng.unit_vector(6);
      for (double& x : u) x *= r;
      const double iv = i_value(u, ctx);
      if (iv > lemma21_bound(u, ctx) + 1e-9 * (1.0 + std::abs(iv))) {
        detail = "bound violated at r=" + std::to_string(r);
        return false;
      }
    }
    for (int d = 0; d < 100; ++d) {
      auto u = rng.unit_vector(6);
      for (double& x : u) x *= 1e3;
      if (i_value(u, ctx) >= -1e6) {
        detail = "insufficient decay on ray " + std::to_string(d);
        return false;
      }
    }
    return true;
  });

  criterion(5, "constant-sequence closed form", 1.0, [](std::string& detail) {
    const auto ctx = canonical();
    if (i_value(std::vector<double>(6, 0.0), ctx) != 0.0) {
      detail = "I(0) != 0";
      return false;
    }
    for (int k = -3; k <= 3; ++k) {
      for (double sign : {1.0, -1.0}) {
        const double v = sign * std::pow(10.0, k);
        const double iv = i_value(std::vector<double>(6, v), ctx);
        const double expect = -6.0 * std::pow(std::abs(v), 3.0);
        if (std::abs(iv - expect) > 1e-10 * (1.0 + std::pow(std::abs(v), 3.0))) {
          detail = "closed form at v=" + std::to_string(v);
          return false;
        }
        if (iv >= 0.0) {
          detail = "constant-set maximum not at v=0";
          return false;
        }
      }
    }
    return true;
  });

  criterion(6, "linking geometry (A1) and (A2) for both +e and -e", 30.0,
            [](std::string& detail) {
    const auto ctx = canonical();
    SolverConfig cfg;
    const auto rep = verify_linking_geometry(ctx, cfg, 1000);
    if (!(rep.a1_min_on_sphere >= rep.sigma - 1e-9)) {
      detail = "A1 sampled min " + format_double17(rep.a1_min_on_sphere);
      return false;
    }
    if (!rep.a2_ok || rep.r_outer_plus <= 0.0 || rep.r_outer_minus <= 0.0) {
      detail = "A2 radius search failed";
      return false;
    }
    if (rep.a2_max_on_boundary > 1e-9) {
      detail = "A2 sampled max " + format_double17(rep.a2_max_on_boundary);
      return false;
    }
    return true;
  });

  criterion(7, "two nontrivial solutions for Example 3.1", 60.0, [](std::string& detail) {
    const auto ctx = canonical();
    SolverConfig cfg;  // 64 restarts
    auto records = dedupe_orbits(find_critical_points(ctx, cfg), ctx.potential.flags,
                                 cfg.merge_tol);
    bool trivial_found = false;
    std::vector<const CriticalPointRecord*> orbit_reps;
    std::set<long> seen;
    for (const auto& rec : records) {
      if (rec.residual.per_index.size() != 6) {
        detail = "full residual not reported";
        return false;
      }
      if (rec.classification == PointClass::Trivial && std::abs(rec.value) <= 1e-12) {
        trivial_found = true;
      }
      if (rec.classification == PointClass::Nonconstant && rec.value > 0.0 &&
          rec.grad_norm <= 1e-8 && std::abs(rec.residual.at_n0) <= 1e-6) {
        if (seen.insert(rec.orbit_id).second) orbit_reps.push_back(&rec);
      }
    }
    if (!trivial_found) {
      detail = "trivial record u = 0 missing";
      return false;
    }
    if (orbit_reps.size() < 2) {
      detail = "fewer than 2 qualifying orbits";
      return false;
    }
    for (std::size_t a = 0; a < orbit_reps.size(); ++a) {
      for (std::size_t b = a + 1; b < orbit_reps.size(); ++b) {
        if (dist(orbit_reps[a]->point, orbit_reps[b]->point) <= 1e-4) {
          detail = "orbit representatives too close";
          return false;
        }
      }
    }
    detail = std::to_string(orbit_reps.size()) + " qualifying orbits";
    return true;
  });

  criterion(8, "hypothesis checkers on Example 3.1 and the +|y|^3 potential", 10.0,
            [](std::string& detail) {
    const auto f = example31_potential(1.0, 3.0, 6);
    const HypothesisConstants constants{1.0, 0.25, 1.0, 0.01, 3.0};
    for (const auto& rep : check_hypotheses(f, constants, SamplingPlan{})) {
      if (!rep.pass()) {
        detail = rep.id + " unexpectedly failed";
        return false;
      }
    }
    PotentialDefinition def;
    def.period = 6;
    def.terms = {PotentialTerm{TermArg::Y, TermKind::AbsPow, 1.0, 3.0, TermModulation::None}};
    const auto bad = table_potential(def);
    const auto reports = check_hypotheses(bad, constants, SamplingPlan{});
    if (reports[2].pass() || reports[2].violations.empty()) {
      detail = "D3 failure not detected";
      return false;
    }
    const auto& w = reports[2].violations.front();
    if (bad.eval(w.n, w.x, w.y, w.z) != w.lhs || w.lhs <= w.rhs) {
      detail = "D3 witness does not replay";
      return false;
    }
    return true;
  });

  criterion(9, "determinism and verify round-trip through the CLI", 120.0,
            [](std::string& detail) {
    const std::string cfg = std::string(HAMLINK_CONFIG_DIR) + "/example31_m6.json";
    const fs::path dir1 = fs::temp_directory_path() / "hamlink_accept_1";
    const fs::path dir2 = fs::temp_directory_path() / "hamlink_accept_2";
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    auto run = [&](const std::string& args) {
      const std::string cmd =
          std::string(HAMLINK_BIN) + " " + args + " > /dev/null 2>&1";
      return WEXITSTATUS(std::system(cmd.c_str()));
    };
    if (run("solve --config " + cfg + " --out " + dir1.string()) != 0 ||
        run("solve --config " + cfg + " --out " + dir2.string()) != 0) {
      detail = "solve exited nonzero";
      return false;
    }
    for (const char* name : {"results.json", "solutions.csv", "solutions_meta.csv"}) {
      if (read_text_file((dir1 / name).string()) !=
          read_text_file((dir2 / name).string())) {
        detail = std::string(name) + " not byte-identical";
        return false;
      }
    }
    if (run("verify --config " + cfg + " --out " + dir1.string()) != 0) {
      detail = "verify reported drift";
      return false;
    }
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    return true;
  });

  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures;
}
