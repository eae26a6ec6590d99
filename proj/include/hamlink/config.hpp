#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamlink/functional.hpp"
#include "hamlink/hypotheses.hpp"
#include "hamlink/io.hpp"
#include "hamlink/potential.hpp"
#include "hamlink/solver.hpp"

namespace hamlink {

/// Raised for malformed or out-of-range configuration; the CLI maps it to
/// exit status 2. Messages name the offending key and the constraint.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// How the potential was specified in the config document.
enum class PotentialSource { Example31, InlineDefinition, File };

/**
 * The fully validated run configuration. Defaults: n0 = 3, d2 = 0.01,
 * delta = 0.25, restarts = 64, seed = 42, and d1 = b·λ_min when omitted.
 * Unknown keys are rejected rather than ignored.
 */
struct RunConfig {
  long m = 0;
  long n0 = 3;
  double b = 0.0;
  double beta = 0.0;
  double delta = 0.25;
  double d1 = 0.0;  // 0 → defaulted to b·λ_min at build time
  double d2 = 0.01;
  PotentialSource potential_source = PotentialSource::Example31;
  PotentialDefinition potential_definition;  // for InlineDefinition/File
  std::string potential_path;                // for File
  SolverConfig solver;
  SamplingPlan check_plan;
  long linking_samples = 1000;
  std::string output_dir = "out";
};

namespace detail {

using json = nlohmann::json;

inline void reject_unknown_keys(const json& obj, const std::vector<std::string>& known,
                                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const auto& k : known) {
      if (it.key() == k) ok = true;
    }
    if (!ok) throw ConfigError(where + it.key() + ": unknown key");
  }
}

inline double require_number(const json& obj, const std::string& key, double fallback,
                             bool required) {
  if (!obj.contains(key)) {
    if (required) throw ConfigError(key + ": required key is missing");
    return fallback;
  }
  if (!obj[key].is_number()) throw ConfigError(key + ": must be a number");
  return obj[key].get<double>();
}

inline long require_integer(const json& obj, const std::string& key, long fallback,
                            bool required) {
  if (!obj.contains(key)) {
    if (required) throw ConfigError(key + ": required key is missing");
    return fallback;
  }
  if (!obj[key].is_number_integer()) throw ConfigError(key + ": must be an integer");
  return obj[key].get<long>();
}

inline PotentialTerm parse_term(const json& t) {
  reject_unknown_keys(t, {"arg", "kind", "coeff", "power", "modulation"},
                      "potential.terms: ");
  PotentialTerm term;
  const std::string arg = t.value("arg", "");
  if (arg == "x") term.arg = TermArg::X;
  else if (arg == "y") term.arg = TermArg::Y;
  else if (arg == "z") term.arg = TermArg::Z;
  else if (arg == "xy") term.arg = TermArg::XY;
  else if (arg == "yz") term.arg = TermArg::YZ;
  else throw ConfigError("potential.terms.arg: must be one of x|y|z|xy|yz");

  const std::string kind = t.value("kind", "");
  if (kind == "abspow") term.kind = TermKind::AbsPow;
  else if (kind == "square") term.kind = TermKind::Square;
  else if (kind == "cross") term.kind = TermKind::Cross;
  else throw ConfigError("potential.terms.kind: must be one of abspow|square|cross");

  term.coeff = require_number(t, "coeff", 0.0, true);
  term.power = require_number(t, "power", 0.0, term.kind == TermKind::AbsPow);
  const std::string mod = t.value("modulation", "none");
  if (mod == "none") term.modulation = TermModulation::None;
  else if (mod == "cos") term.modulation = TermModulation::Cos;
  else if (mod == "sin") term.modulation = TermModulation::Sin;
  else throw ConfigError("potential.terms.modulation: must be one of none|cos|sin");

  try {
    validate_term(term);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("potential.terms: ") + e.what());
  }
  return term;
}

inline PotentialDefinition parse_potential_definition(const json& p) {
  reject_unknown_keys(p, {"period", "terms"}, "potential: ");
  PotentialDefinition def;
  def.period = require_integer(p, "period", 0, true);
  if (def.period < kMinPeriod) throw ConfigError("potential.period: must be >= 5");
  if (!p.contains("terms") || !p["terms"].is_array()) {
    throw ConfigError("potential.terms: must be an array");
  }
  for (const auto& t : p["terms"]) def.terms.push_back(parse_term(t));
  return def;
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
  detail::json doc;
  try {
    doc = detail::json::parse(text);
  } catch (const detail::json::parse_error& e) {
    throw ConfigError(std::string("config: not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");

  detail::reject_unknown_keys(
      doc,
      {"m", "n0", "b", "beta", "delta", "d1", "d2", "potential", "solver", "check",
       "linking_samples", "output_dir"},
      "");

  RunConfig cfg;
  cfg.m = detail::require_integer(doc, "m", 0, true);
  if (cfg.m < kMinPeriod) throw ConfigError("m: must be >= 5");
  cfg.n0 = detail::require_integer(doc, "n0", 3, false);
  if (cfg.n0 < 3 || cfg.n0 > cfg.m - 2) throw ConfigError("n0: must satisfy 3 <= n0 <= m-2");
  cfg.b = detail::require_number(doc, "b", 0.0, true);
  if (cfg.b <= 0.0) throw ConfigError("b: must be > 0");
  cfg.beta = detail::require_number(doc, "beta", 0.0, true);
  if (cfg.beta <= 2.0) throw ConfigError("beta: must be > 2");
  cfg.delta = detail::require_number(doc, "delta", 0.25, false);
  if (cfg.delta <= 0.0 || cfg.delta > 1.0) throw ConfigError("delta: must be in (0, 1]");
  cfg.d1 = detail::require_number(doc, "d1", 0.0, false);
  if (doc.contains("d1") && cfg.d1 <= 0.0) throw ConfigError("d1: must be > 0");
  cfg.d2 = detail::require_number(doc, "d2", 0.01, false);
  if (cfg.d2 <= 0.0) throw ConfigError("d2: must be > 0");

  if (!doc.contains("potential")) throw ConfigError("potential: required key is missing");
  const auto& pot = doc["potential"];
  if (pot.is_string()) {
    const std::string s = pot.get<std::string>();
    if (s == "example31") {
      cfg.potential_source = PotentialSource::Example31;
    } else {
      cfg.potential_source = PotentialSource::File;
      cfg.potential_path = s;
    }
  } else if (pot.is_object()) {
    cfg.potential_source = PotentialSource::InlineDefinition;
    cfg.potential_definition = detail::parse_potential_definition(pot);
  } else {
    throw ConfigError("potential: must be \"example31\", a file path, or an inline object");
  }

  if (doc.contains("solver")) {
    const auto& s = doc["solver"];
    if (!s.is_object()) throw ConfigError("solver: must be an object");
    detail::reject_unknown_keys(
        s, {"restarts", "seed", "grad_tol", "max_iters", "merge_tol", "init_radius"},
        "solver.");
    cfg.solver.restarts = detail::require_integer(s, "restarts", 64, false);
    if (cfg.solver.restarts < 2) throw ConfigError("solver.restarts: must be >= 2");
    if (s.contains("seed")) {
      if (!s["seed"].is_number_unsigned() && !s["seed"].is_number_integer()) {
        throw ConfigError("solver.seed: must be a nonnegative integer");
      }
      cfg.solver.seed = s["seed"].get<std::uint64_t>();
    }
    cfg.solver.grad_tol = detail::require_number(s, "grad_tol", 1e-8, false);
    cfg.solver.max_iters = detail::require_integer(s, "max_iters", 500, false);
    cfg.solver.merge_tol = detail::require_number(s, "merge_tol", 1e-4, false);
    cfg.solver.init_radius = detail::require_number(s, "init_radius", 0.0, false);
    if (cfg.solver.grad_tol <= 0) throw ConfigError("solver.grad_tol: must be > 0");
    if (cfg.solver.max_iters <= 0) throw ConfigError("solver.max_iters: must be > 0");
    if (cfg.solver.merge_tol <= 0) throw ConfigError("solver.merge_tol: must be > 0");
    if (cfg.solver.init_radius < 0) throw ConfigError("solver.init_radius: must be >= 0");
  }

  cfg.check_plan.seed = cfg.solver.seed;
  if (doc.contains("check")) {
    const auto& c = doc["check"];
    if (!c.is_object()) throw ConfigError("check: must be an object");
    detail::reject_unknown_keys(c, {"grid", "samples", "range_min", "range_max", "seed"},
                                "check.");
    cfg.check_plan.grid = detail::require_integer(c, "grid", 9, false);
    cfg.check_plan.samples = detail::require_integer(c, "samples", 400, false);
    cfg.check_plan.range_min = detail::require_number(c, "range_min", 1e-3, false);
    cfg.check_plan.range_max = detail::require_number(c, "range_max", 1e3, false);
    if (c.contains("seed")) cfg.check_plan.seed = c["seed"].get<std::uint64_t>();
    if (cfg.check_plan.grid < 2) throw ConfigError("check.grid: must be >= 2");
    if (cfg.check_plan.samples < 1) throw ConfigError("check.samples: must be >= 1");
  }

  cfg.linking_samples = detail::require_integer(doc, "linking_samples", 1000, false);
  if (cfg.linking_samples < 1000) throw ConfigError("linking_samples: must be >= 1000");

  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) throw ConfigError("output_dir: must be a string");
    cfg.output_dir = doc["output_dir"].get<std::string>();
  }
  return cfg;
}

/// Resolve the configured potential into a PotentialSpec, loading a file
/// definition when necessary.
inline PotentialSpec build_potential(const RunConfig& cfg) {
  switch (cfg.potential_source) {
    case PotentialSource::Example31:
      return example31_potential(cfg.b, cfg.beta, cfg.m);
    case PotentialSource::InlineDefinition:
      if (cfg.potential_definition.period != cfg.m) {
        throw ConfigError("potential.period: must equal m");
      }
      return table_potential(cfg.potential_definition);
    case PotentialSource::File: {
      detail::json doc;
      try {
        doc = detail::json::parse(read_text_file(cfg.potential_path));
      } catch (const detail::json::parse_error& e) {
        throw ConfigError("potential file: not valid JSON: " + std::string(e.what()));
      }
      auto def = detail::parse_potential_definition(doc);
      if (def.period != cfg.m) throw ConfigError("potential.period: must equal m");
      return table_potential(def);
    }
  }
  throw ConfigError("potential: unreachable source");
}

/// Assemble the functional context, applying the d1 default b·λ_min.
inline FunctionalContext build_context(const RunConfig& cfg) {
  const double lam =
      2.0 * (1.0 - std::cos(2.0 * std::numbers::pi / static_cast<double>(cfg.m)));
  const double d1 = cfg.d1 > 0.0 ? cfg.d1 : cfg.b * lam;
  return make_context(cfg.m, cfg.n0, cfg.b, cfg.beta, d1, cfg.d2, cfg.delta,
                      build_potential(cfg));
}

}  // namespace hamlink
