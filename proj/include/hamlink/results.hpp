#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hamlink/certificate.hpp"
#include "hamlink/config.hpp"
#include "hamlink/io.hpp"

namespace hamlink {

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson numbers_as_strings(const std::vector<double>& v) {
  ojson arr = ojson::array();
  for (double x : v) arr.push_back(format_double17(x));
  return arr;
}

inline ojson residual_to_json(const ResidualReport& r) {
  ojson j;
  j["convention"] = r.convention == ResidualConvention::Pointwise ? "pointwise"
                                                                  : "summed-action";
  j["per_index"] = numbers_as_strings(r.per_index);
  j["max_abs"] = format_double17(r.max_abs);
  j["at_n0"] = format_double17(r.at_n0);
  return j;
}

inline const char* class_name(PointClass c) {
  switch (c) {
    case PointClass::Trivial: return "trivial";
    case PointClass::ConstantNonzero: return "constant-nonzero";
    default: return "nonconstant";
  }
}

}  // namespace detail

inline detail::ojson config_echo_json(const RunConfig& cfg) {
  detail::ojson j;
  j["m"] = cfg.m;
  j["n0"] = cfg.n0;
  j["b"] = format_double17(cfg.b);
  j["beta"] = format_double17(cfg.beta);
  j["delta"] = format_double17(cfg.delta);
  j["d1"] = cfg.d1 > 0.0 ? format_double17(cfg.d1) : "default:b*lambda_min";
  j["d2"] = format_double17(cfg.d2);
  switch (cfg.potential_source) {
    case PotentialSource::Example31: j["potential"] = "example31"; break;
    case PotentialSource::File: j["potential"] = cfg.potential_path; break;
    case PotentialSource::InlineDefinition: j["potential"] = "inline"; break;
  }
  j["solver"]["restarts"] = cfg.solver.restarts;
  j["solver"]["seed"] = cfg.solver.seed;
  j["solver"]["grad_tol"] = format_double17(cfg.solver.grad_tol);
  j["solver"]["max_iters"] = cfg.solver.max_iters;
  j["solver"]["merge_tol"] = format_double17(cfg.solver.merge_tol);
  j["solver"]["init_radius"] = format_double17(cfg.solver.init_radius);
  j["linking_samples"] = cfg.linking_samples;
  return j;
}

inline detail::ojson spectral_json(const SpectralData& sd) {
  detail::ojson j;
  j["m"] = sd.m;
  j["n0"] = sd.n0;
  j["lambda_min"] = format_double17(sd.lambda_min);
  j["lambda_max"] = format_double17(sd.lambda_max);
  j["gamma_min"] = format_double17(sd.gamma_min);
  j["closed_form_eigenvalues"] = detail::numbers_as_strings(spectrum_A(sd.m).eigenvalues);
  j["numeric_eigenvalues"] =
      detail::numbers_as_strings(jacobi_eigenvalues(sd.a_matrix));
  return j;
}

inline detail::ojson hypotheses_json(const std::vector<HypothesisReport>& reports) {
  detail::ojson arr = detail::ojson::array();
  for (const auto& rep : reports) {
    detail::ojson j;
    j["id"] = rep.id;
    j["pass"] = rep.pass();
    j["sample_count"] = rep.sample_count;
    detail::ojson witnesses = detail::ojson::array();
    const std::size_t cap = 8;  // enough to replay; keeps artifacts diffable
    for (std::size_t i = 0; i < rep.violations.size() && i < cap; ++i) {
      const auto& v = rep.violations[i];
      detail::ojson w;
      w["n"] = v.n;
      w["x"] = format_double17(v.x);
      w["y"] = format_double17(v.y);
      w["z"] = format_double17(v.z);
      w["lhs"] = format_double17(v.lhs);
      w["rhs"] = format_double17(v.rhs);
      witnesses.push_back(w);
    }
    j["violation_count"] = rep.violations.size();
    j["witnesses"] = witnesses;
    arr.push_back(j);
  }
  return arr;
}

inline detail::ojson solutions_json(const std::vector<CriticalPointRecord>& records) {
  detail::ojson arr = detail::ojson::array();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    detail::ojson j;
    j["index"] = i;
    j["orbit_id"] = rec.orbit_id;
    j["value"] = format_double17(rec.value);
    j["grad_norm"] = format_double17(rec.grad_norm);
    j["morse_index"] = rec.morse_index;
    j["near_null"] = rec.near_null;
    j["hessian_caveat"] = rec.hessian_caveat;
    j["classification"] = detail::class_name(rec.classification);
    j["point"] = detail::numbers_as_strings(rec.point);
    j["residual_pointwise"] = detail::residual_to_json(rec.residual);
    j["residual_summed"] = detail::residual_to_json(rec.residual_summed);
    arr.push_back(j);
  }
  return arr;
}

inline detail::ojson linking_json(const LinkingReport& rep) {
  detail::ojson j;
  j["sigma"] = format_double17(rep.sigma);
  j["rho"] = format_double17(rep.rho);
  j["r_outer_plus"] = format_double17(rep.r_outer_plus);
  j["r_outer_minus"] = format_double17(rep.r_outer_minus);
  j["a1_min_on_sphere"] = format_double17(rep.a1_min_on_sphere);
  j["a1_witness"] = detail::numbers_as_strings(rep.a1_witness);
  j["a2_max_on_boundary"] = format_double17(rep.a2_max_on_boundary);
  j["a2_witness"] = detail::numbers_as_strings(rep.a2_witness);
  j["z_face_max"] = format_double17(rep.z_face_max);
  j["e_direction"] = detail::numbers_as_strings(rep.e_direction);
  j["a1_ok"] = rep.a1_ok;
  j["a2_ok"] = rep.a2_ok;
  j["samples"] = rep.samples;
  return j;
}

inline detail::ojson certificate_json(const Certificate& cert) {
  detail::ojson j;
  j["certified"] = cert.certified;
  j["case"] = cert.case_label;
  j["distinct_qualifying_orbits"] = cert.distinct_qualifying_orbits;
  j["qualifying_records"] = cert.qualifying;
  j["failure_component"] = cert.failure_component;
  return j;
}

/// One top-level document per run: config-echo, spectral, hypotheses,
/// solutions, linking, certificate.
inline std::string results_document(const RunConfig& cfg, const FunctionalContext& ctx,
                                    const Certificate& cert) {
  detail::ojson doc;
  doc["config"] = config_echo_json(cfg);
  doc["spectral"] = spectral_json(ctx.spectral);
  doc["hypotheses"] = hypotheses_json(cert.hypotheses);
  doc["solutions"] = solutions_json(cert.records);
  doc["linking"] = linking_json(cert.linking);
  doc["certificate"] = certificate_json(cert);
  return doc.dump(2) + "\n";
}

/// Sidecar metadata for a persisted solution set, one row per record:
/// index, orbit_id, value, grad_norm, morse_index, near_null, hessian_caveat,
/// classification, residual_max_abs, residual_at_n0, residual_summed_max_abs.
inline std::string solutions_meta_csv(const std::vector<CriticalPointRecord>& records) {
  std::string out =
      "index,orbit_id,value,grad_norm,morse_index,near_null,hessian_caveat,"
      "classification,residual_max_abs,residual_at_n0,residual_summed_max_abs\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    out += std::to_string(i) + ',' + std::to_string(rec.orbit_id) + ',';
    out += format_double17(rec.value) + ',' + format_double17(rec.grad_norm) + ',';
    out += std::to_string(rec.morse_index) + ',' + std::to_string(rec.near_null) + ',';
    out += std::string(rec.hessian_caveat ? "1" : "0") + ',';
    out += std::string(detail::class_name(rec.classification)) + ',';
    out += format_double17(rec.residual.max_abs) + ',';
    out += format_double17(rec.residual.at_n0) + ',';
    out += format_double17(rec.residual_summed.max_abs) + '\n';
  }
  return out;
}

}  // namespace hamlink
