#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hamlink/functional.hpp"
#include "hamlink/hypotheses.hpp"
#include "hamlink/linking.hpp"
#include "hamlink/solver.hpp"

namespace hamlink {

/**
 * The bundled evidence for the two-solution claim at desk scale: hypothesis
 * reports, sampled linking geometry, the deduped critical-point records, and
 * which of the proof's cases (c = c₀ or c ≠ c₀) the numbers land in.
 * "certified-at-desk-scale" means every component verdict passed on its
 * sample — it is numerical evidence, not a proof.
 */
struct Certificate {
  std::vector<HypothesisReport> hypotheses;
  LinkingReport linking;
  std::vector<CriticalPointRecord> records;        // deduped, sorted by value
  std::vector<std::size_t> qualifying;             // indices into records
  long distinct_qualifying_orbits = 0;
  std::string case_label;                          // "c == c0" | "c != c0"
  bool certified = false;
  std::string failure_component;                   // empty when certified
};

inline Certificate two_solution_certificate(const FunctionalContext& ctx,
                                            const SolverConfig& cfg,
                                            const SamplingPlan& plan = SamplingPlan{},
                                            long linking_samples = 1000) {
  Certificate cert;

  HypothesisConstants constants{ctx.b, ctx.delta, ctx.d1, ctx.d2, ctx.beta};
  cert.hypotheses = check_hypotheses(ctx.potential, constants, plan);
  for (const auto& rep : cert.hypotheses) {
    const bool gating = rep.id != "D4" || ctx.potential.d4_form;
    if (gating && !rep.pass() && cert.failure_component.empty()) {
      cert.failure_component = rep.id;
    }
  }

  cert.linking = verify_linking_geometry(ctx, cfg, linking_samples);
  if (cert.failure_component.empty() && !cert.linking.a1_ok) cert.failure_component = "A1";
  if (cert.failure_component.empty() && !cert.linking.a2_ok) cert.failure_component = "A2";

  cert.records = dedupe_orbits(find_critical_points(ctx, cfg), ctx.potential.flags,
                               cfg.merge_tol);

  std::vector<long> seen_orbits;
  for (std::size_t i = 0; i < cert.records.size(); ++i) {
    const auto& rec = cert.records[i];
    const bool positive = rec.value > 0.0 || rec.value >= cert.linking.sigma - 1e-9;
    if (rec.classification == PointClass::Nonconstant && positive) {
      cert.qualifying.push_back(i);
      bool new_orbit = true;
      for (long id : seen_orbits) {
        if (id == rec.orbit_id) new_orbit = false;
      }
      if (new_orbit) seen_orbits.push_back(rec.orbit_id);
    }
  }
  cert.distinct_qualifying_orbits = static_cast<long>(seen_orbits.size());
  if (cert.failure_component.empty() && cert.distinct_qualifying_orbits < 2) {
    cert.failure_component = "solution count";
  }

  // which of the proof's cases the numbers exhibit: compare the top two
  // distinct qualifying orbit levels
  if (cert.distinct_qualifying_orbits >= 2) {
    double c0 = 0.0, second = 0.0;
    long c0_orbit = -1;
    bool have_c0 = false, have_second = false;
    for (std::size_t i : cert.qualifying) {
      const auto& rec = cert.records[i];
      if (!have_c0) {
        c0 = rec.value;
        c0_orbit = rec.orbit_id;
        have_c0 = true;
      } else if (!have_second && rec.orbit_id != c0_orbit) {
        second = rec.value;
        have_second = true;
      }
    }
    cert.case_label = (have_second && std::abs(second - c0) <= 1e-9 * (1.0 + std::abs(c0)))
                          ? "c == c0"
                          : "c != c0";
  }

  cert.certified = cert.failure_component.empty();
  return cert;
}

}  // namespace hamlink
