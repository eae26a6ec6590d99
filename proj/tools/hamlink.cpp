// hamlink: batch front door for the discrete-Hamiltonian variational toolkit.
//
// Subcommands: spectra | check | solve | verify | report, each driven by a
// JSON config. Exit status: 0 all verdicts in scope pass, 1 verdict failure,
// 2 usage/config error, 3 I/O error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hamlink/hamlink.hpp"

namespace {

using namespace hamlink;
namespace fs = std::filesystem;

struct CliOptions {
  std::string config_path;
  std::string out_dir;  // empty → config's output_dir
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool quiet = false;
};

void say(const CliOptions& opt, const std::string& line) {
  if (!opt.quiet) std::printf("%s\n", line.c_str());
}

RunConfig load_config(const CliOptions& opt) {
  RunConfig cfg = parse_config(read_text_file(opt.config_path));
  if (opt.seed_given) {
    cfg.solver.seed = opt.seed;
    cfg.check_plan.seed = opt.seed;
  }
  if (!opt.out_dir.empty()) cfg.output_dir = opt.out_dir;
  return cfg;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory: " + dir);
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

/// Timestamps live only here so the primary artifacts stay byte-identical
/// across reruns.
void write_run_info(const RunConfig& cfg, const std::string& command) {
  nlohmann::ordered_json j;
  j["command"] = command;
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  j["unix_millis"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  write_text_file(join(cfg.output_dir, "run_info.json"), j.dump(2) + "\n");
}

int cmd_spectra(const CliOptions& opt) {
  const RunConfig cfg = load_config(opt);
  ensure_dir(cfg.output_dir);
  const SpectralData sd = decompose(cfg.m, cfg.n0);

  const auto a_sys = jacobi_eigensystem(sd.a_matrix);
  const auto l_sys = jacobi_eigensystem(sd.l_matrix);
  write_text_file(join(cfg.output_dir, "a_eigs.csv"),
                  eigenpairs_to_csv(a_sys.eigenvalues, a_sys.eigenvectors));
  write_text_file(join(cfg.output_dir, "l_eigs.csv"),
                  eigenpairs_to_csv(l_sys.eigenvalues, l_sys.eigenvectors));
  write_text_file(join(cfg.output_dir, "basis_z.csv"), basis_to_csv(sd.basis_z));
  write_text_file(join(cfg.output_dir, "basis_y.csv"), basis_to_csv(sd.basis_y));

  nlohmann::ordered_json doc;
  doc["config"] = config_echo_json(cfg);
  doc["spectral"] = spectral_json(sd);
  write_text_file(join(cfg.output_dir, "results.json"), doc.dump(2) + "\n");
  write_run_info(cfg, "spectra");

  // verdict: closed form vs numeric agreement
  const auto closed = spectrum_A(cfg.m).eigenvalues;
  for (std::size_t k = 0; k < closed.size(); ++k) {
    if (std::abs(closed[k] - a_sys.eigenvalues[k]) > 1e-10) {
      say(opt, "spectra: FAIL closed-form vs numeric eigenvalue drift");
      return 1;
    }
  }
  say(opt, "spectra: ok (lambda_min " + format_double17(sd.lambda_min) + ")");
  return 0;
}

bool hypothesis_in_scope(const HypothesisReport& rep, const PotentialSpec& f) {
  return rep.id != "D4" || f.d4_form;
}

int cmd_check(const CliOptions& opt) {
  const RunConfig cfg = load_config(opt);
  ensure_dir(cfg.output_dir);
  const FunctionalContext ctx = build_context(cfg);
  HypothesisConstants constants{ctx.b, ctx.delta, ctx.d1, ctx.d2, ctx.beta};
  const auto reports = check_hypotheses(ctx.potential, constants, cfg.check_plan);

  nlohmann::ordered_json doc;
  doc["config"] = config_echo_json(cfg);
  doc["hypotheses"] = hypotheses_json(reports);
  write_text_file(join(cfg.output_dir, "results.json"), doc.dump(2) + "\n");
  write_run_info(cfg, "check");

  int status = 0;
  for (const auto& rep : reports) {
    const bool scoped = hypothesis_in_scope(rep, ctx.potential);
    say(opt, rep.id + ": " + (rep.pass() ? "pass" : "FAIL") +
                 (scoped ? "" : " (informational)"));
    if (scoped && !rep.pass()) status = 1;
  }
  return status;
}

int cmd_solve(const CliOptions& opt) {
  const RunConfig cfg = load_config(opt);
  ensure_dir(cfg.output_dir);
  const FunctionalContext ctx = build_context(cfg);
  const Certificate cert =
      two_solution_certificate(ctx, cfg.solver, cfg.check_plan, cfg.linking_samples);

  write_text_file(join(cfg.output_dir, "results.json"),
                  results_document(cfg, ctx, cert));
  std::vector<std::vector<double>> seqs;
  for (const auto& rec : cert.records) seqs.push_back(rec.point);
  write_text_file(join(cfg.output_dir, "solutions.csv"), sequences_to_csv(seqs));
  write_text_file(join(cfg.output_dir, "solutions_meta.csv"),
                  solutions_meta_csv(cert.records));
  write_run_info(cfg, "solve");

  say(opt, "solve: " + std::to_string(cert.records.size()) + " records, " +
               std::to_string(cert.distinct_qualifying_orbits) +
               " qualifying orbits, certificate " +
               (cert.certified ? "certified" : "FAIL(" + cert.failure_component + ")"));
  return cert.certified ? 0 : 1;
}

int cmd_verify(const CliOptions& opt) {
  const RunConfig cfg = load_config(opt);
  const FunctionalContext ctx = build_context(cfg);
  const auto seqs =
      sequences_from_csv(read_text_file(join(cfg.output_dir, "solutions.csv")));
  const std::string meta = read_text_file(join(cfg.output_dir, "solutions_meta.csv"));

  // parse the meta sidecar
  std::vector<std::vector<std::string>> rows;
  {
    std::istringstream lines(meta);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
      if (line.empty()) continue;
      std::vector<std::string> cells;
      std::istringstream cs(line);
      std::string cell;
      while (std::getline(cs, cell, ',')) cells.push_back(cell);
      rows.push_back(std::move(cells));
    }
  }
  if (rows.size() != seqs.size()) {
    say(opt, "verify: FAIL solutions.csv and solutions_meta.csv disagree on count");
    return 1;
  }

  const double tol = 1e-9;
  double worst = 0.0;
  bool ok = true;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    if (static_cast<long>(seqs[i].size()) != cfg.m) {
      say(opt, "verify: FAIL sequence length mismatch at row " + std::to_string(i));
      return 1;
    }
    const double value = i_value(seqs[i], ctx);
    const double gn = gradient_norm(i_gradient(seqs[i], ctx));
    const auto res = system_residual(seqs[i], ctx, ResidualConvention::Pointwise);
    const double v0 = std::stod(rows[i][2]);
    const double g0 = std::stod(rows[i][3]);
    const double r0 = std::stod(rows[i][8]);
    const double rn0 = std::stod(rows[i][9]);
    for (double drift : {std::abs(value - v0), std::abs(gn - g0),
                         std::abs(res.max_abs - r0), std::abs(res.at_n0 - rn0)}) {
      worst = std::max(worst, drift);
      if (drift > tol) ok = false;
    }
  }
  say(opt, std::string("verify: ") + (ok ? "ok" : "FAIL") + " (worst drift " +
               format_double17(worst) + ")");
  return ok ? 0 : 1;
}

int cmd_report(const CliOptions& opt) {
  const RunConfig cfg = load_config(opt);
  ensure_dir(cfg.output_dir);
  const FunctionalContext ctx = build_context(cfg);

  // I along rays: 16 seeded directions, log-spaced radii
  {
    std::string csv = "direction,radius,i_value\n";
    for (long d = 0; d < 16; ++d) {
      auto rng = RngStream::substream(cfg.solver.seed, 0xce11u + static_cast<std::uint64_t>(d));
      const auto dir = rng.unit_vector(static_cast<std::size_t>(ctx.m));
      for (int k = -12; k <= 12; ++k) {
        const double r = std::pow(10.0, static_cast<double>(k) / 4.0);
        std::vector<double> u(dir.size());
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = r * dir[i];
        csv += std::to_string(d) + ',' + format_double17(r) + ',' +
               format_double17(i_value(u, ctx)) + '\n';
      }
    }
    write_text_file(join(cfg.output_dir, "rays.csv"), csv);
  }

  // 2-D sections: the Z plane, and the (e, z2) section of Z ⊕ span{e}
  {
    auto rng = RngStream::substream(cfg.solver.seed, 0x5ec0u);
    const auto e = ctx.spectral.from_y_coords(rng.unit_vector(static_cast<std::size_t>(ctx.m) - 2));
    const double span = 4.0;
    const long grid = 41;
    std::string zplane = "c_const,c_spike,i_value\n";
    std::string zesec = "c_spike,c_e,i_value\n";
    for (long a = 0; a < grid; ++a) {
      for (long bb = 0; bb < grid; ++bb) {
        const double ca = -span + 2.0 * span * static_cast<double>(a) / static_cast<double>(grid - 1);
        const double cb = -span + 2.0 * span * static_cast<double>(bb) / static_cast<double>(grid - 1);
        auto uz = ctx.spectral.from_z_coords(ca, cb);
        zplane += format_double17(ca) + ',' + format_double17(cb) + ',' +
                  format_double17(i_value(uz, ctx)) + '\n';
        auto ue = ctx.spectral.from_z_coords(0.0, ca);
        for (std::size_t i = 0; i < ue.size(); ++i) ue[i] += cb * e[i];
        zesec += format_double17(ca) + ',' + format_double17(cb) + ',' +
                 format_double17(i_value(ue, ctx)) + '\n';
      }
    }
    write_text_file(join(cfg.output_dir, "section_z.csv"), zplane);
    write_text_file(join(cfg.output_dir, "section_z_e.csv"), zesec);
  }

  // human-readable summary
  {
    std::string txt;
    txt += "hamlink report\n";
    txt += "m=" + std::to_string(cfg.m) + " n0=" + std::to_string(cfg.n0) +
           " b=" + format_double17(cfg.b) + " beta=" + format_double17(cfg.beta) + "\n";
    txt += "lambda_min=" + format_double17(ctx.spectral.lambda_min) +
           " lambda_max=" + format_double17(ctx.spectral.lambda_max) +
           " gamma_min=" + format_double17(ctx.spectral.gamma_min) + "\n";
    txt += "rho=" + format_double17(ctx.rho) +
           " sigma=" + format_double17(0.5 * ctx.spectral.lambda_min * ctx.rho * ctx.rho) + "\n";
    txt += "artifacts: rays.csv section_z.csv section_z_e.csv\n";
    write_text_file(join(cfg.output_dir, "report.txt"), txt);
  }
  write_run_info(cfg, "report");
  say(opt, "report: wrote rays.csv, section_z.csv, section_z_e.csv, report.txt");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variational toolkit for M-periodic discrete Hamiltonian systems"};
  app.require_subcommand(1);

  CliOptions opt;
  int (*handler)(const CliOptions&) = nullptr;
  for (const auto& [name, fn] :
       std::vector<std::pair<std::string, int (*)(const CliOptions&)>>{
           {"spectra", cmd_spectra},
           {"check", cmd_check},
           {"solve", cmd_solve},
           {"verify", cmd_verify},
           {"report", cmd_report}}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", opt.config_path, "JSON config path")->required();
    sub->add_option("--out", opt.out_dir, "output directory (default: config output_dir)");
    sub->add_option("--seed", opt.seed, "override the solver seed")
        ->each([&opt](const std::string&) { opt.seed_given = true; });
    sub->add_flag("--quiet", opt.quiet, "suppress progress lines");
    const auto fn_copy = fn;
    sub->callback([&handler, fn_copy]() { handler = fn_copy; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    return handler(opt);
  } catch (const hamlink::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const hamlink::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
