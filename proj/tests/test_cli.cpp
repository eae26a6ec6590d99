#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "hamlink/config.hpp"
#include "hamlink/io.hpp"
#include "hamlink/results.hpp"

using namespace hamlink;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HAMLINK_BIN) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string config_path(const std::string& name) {
  return std::string(HAMLINK_CONFIG_DIR) + "/" + name;
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("hamlink_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("parse_config: defaults fill in exactly as documented") {
  const auto cfg = parse_config(R"({"m": 6, "b": 1.0, "beta": 3.0, "potential": "example31"})");
  CHECK(cfg.m == 6);
  CHECK(cfg.n0 == 3);
  CHECK(cfg.delta == 0.25);
  CHECK(cfg.d2 == 0.01);
  CHECK(cfg.d1 == 0.0);  // later defaulted to b*lambda_min
  CHECK(cfg.solver.restarts == 64);
  CHECK(cfg.solver.seed == 42);
  CHECK(cfg.potential_source == PotentialSource::Example31);

  const auto ctx = build_context(cfg);
  CHECK(ctx.d1 == Catch::Approx(1.0).margin(1e-14));  // b*lambda_min at M=6
}

TEST_CASE("parse_config: range violations name the key and constraint") {
  using Catch::Matchers::ContainsSubstring;
  CHECK_THROWS_WITH(parse_config(R"({"m": 4, "b": 1.0, "beta": 3.0, "potential": "example31"})"),
                    ContainsSubstring("m:") && ContainsSubstring(">= 5"));
  CHECK_THROWS_WITH(parse_config(R"({"m": 6, "b": 1.0, "beta": 2.0, "potential": "example31"})"),
                    ContainsSubstring("beta:") && ContainsSubstring("> 2"));
  CHECK_THROWS_WITH(parse_config(R"({"m": 6, "b": 1.0, "beta": 3.0, "n0": 5, "potential": "example31"})"),
                    ContainsSubstring("n0:"));
  CHECK_THROWS_WITH(parse_config(R"({"m": 6, "b": 1.0, "beta": 3.0, "delta": 1.5, "potential": "example31"})"),
                    ContainsSubstring("delta:"));
  CHECK_THROWS_WITH(parse_config(R"({"m": 6, "b": 1.0, "beta": 3.0, "potential": "example31", "typo": 1})"),
                    ContainsSubstring("typo") && ContainsSubstring("unknown key"));
  CHECK_THROWS_WITH(parse_config(R"({"m": 6, "b": 1.0, "beta": 3.0, "potential": "example31",
                                     "solver": {"restartz": 9}})"),
                    ContainsSubstring("restartz"));
  CHECK_THROWS_AS(parse_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"m": 6, "beta": 3.0, "potential": "example31"})"),
                  ConfigError);  // b missing
}

TEST_CASE("parse_config: inline table potential") {
  const auto cfg = parse_config(R"({
    "m": 6, "b": 1.0, "beta": 3.0,
    "potential": {"period": 6, "terms": [
      {"arg": "y", "kind": "abspow", "coeff": 1.0, "power": 3.0}
    ]}
  })");
  CHECK(cfg.potential_source == PotentialSource::InlineDefinition);
  REQUIRE(cfg.potential_definition.terms.size() == 1);
  CHECK(cfg.potential_definition.terms[0].arg == TermArg::Y);

  CHECK_THROWS_WITH(parse_config(R"({
    "m": 6, "b": 1.0, "beta": 3.0,
    "potential": {"period": 6, "terms": [
      {"arg": "y", "kind": "abspow", "coeff": 1.0, "power": 2.0}
    ]}
  })"), Catch::Matchers::ContainsSubstring("power"));
}

TEST_CASE("sequence CSV round-trips to 17 significant digits") {
  const std::vector<std::vector<double>> seqs{
      {1.0, -2.5, 3.3333333333333333, 1e-300, 0.1},
      {-0.30000000000000004, 256.65042035957957, 1.0 / 3.0, -4.9e17, 2.2250738585072014e-308}};
  const auto text = sequences_to_csv(seqs);
  const auto back = sequences_from_csv(text);
  REQUIRE(back.size() == seqs.size());
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    REQUIRE(back[i].size() == seqs[i].size());
    for (std::size_t j = 0; j < seqs[i].size(); ++j) {
      CHECK(back[i][j] == seqs[i][j]);  // bitwise round-trip
    }
  }
  // LF line endings, '.' separator, no spaces
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.find(' ') == std::string::npos);
}

TEST_CASE("cli: spectra, check, solve, verify, report on the canonical config") {
  const auto dir = fresh_dir("e2e");
  const std::string base = "--config " + config_path("example31_m6.json") +
                           " --out " + dir.string() + " --quiet";

  CHECK(run_cli("spectra " + base) == 0);
  CHECK(fs::exists(dir / "a_eigs.csv"));
  CHECK(fs::exists(dir / "l_eigs.csv"));
  CHECK(fs::exists(dir / "basis_y.csv"));
  CHECK(fs::exists(dir / "basis_z.csv"));

  CHECK(run_cli("check " + base) == 0);

  CHECK(run_cli("solve " + base) == 0);
  CHECK(fs::exists(dir / "results.json"));
  CHECK(fs::exists(dir / "solutions.csv"));
  CHECK(fs::exists(dir / "solutions_meta.csv"));
  CHECK(fs::exists(dir / "run_info.json"));

  CHECK(run_cli("verify " + base) == 0);
  CHECK(run_cli("report " + base) == 0);
  CHECK(fs::exists(dir / "rays.csv"));
  CHECK(fs::exists(dir / "section_z.csv"));
  CHECK(fs::exists(dir / "section_z_e.csv"));

  fs::remove_all(dir);
}

TEST_CASE("cli: identical seeds give byte-identical primary artifacts") {
  const auto dir1 = fresh_dir("det1");
  const auto dir2 = fresh_dir("det2");
  const std::string cfg = config_path("example31_m6.json");
  REQUIRE(run_cli("solve --config " + cfg + " --out " + dir1.string() + " --quiet") == 0);
  REQUIRE(run_cli("solve --config " + cfg + " --out " + dir2.string() + " --quiet") == 0);
  for (const char* name : {"results.json", "solutions.csv", "solutions_meta.csv"}) {
    CHECK(read_text_file((dir1 / name).string()) == read_text_file((dir2 / name).string()));
  }
  // a different seed changes the run (sanity that the seed is actually wired)
  const auto dir3 = fresh_dir("det3");
  REQUIRE(run_cli("solve --config " + cfg + " --out " + dir3.string() +
                  " --seed 7 --quiet") == 0);
  CHECK(read_text_file((dir1 / "results.json").string()) !=
        read_text_file((dir3 / "results.json").string()));
  fs::remove_all(dir1);
  fs::remove_all(dir2);
  fs::remove_all(dir3);
}

TEST_CASE("cli: exit codes distinguish verdicts, config, and io failures") {
  const auto dir = fresh_dir("codes");
  // (D3)-violating potential: check fails with a verdict (1)
  CHECK(run_cli("check --config " + config_path("bad_d3.json") + " --out " +
                dir.string() + " --quiet") == 1);
  // missing config file: io error (3)
  CHECK(run_cli("check --config /nonexistent/x.json --out " + dir.string() +
                " --quiet") == 3);
  // malformed usage: no subcommand (2 from the parser)
  CHECK(run_cli("--config whatever") == 2);

  // bad config contents: config error (2)
  const auto bad = dir / "bad.json";
  write_text_file(bad.string(), R"({"m": 4, "b": 1.0, "beta": 3.0, "potential": "example31"})");
  CHECK(run_cli("check --config " + bad.string() + " --out " + dir.string() +
                " --quiet") == 2);
  fs::remove_all(dir);
}

TEST_CASE("verify detects tampering") {
  const auto dir = fresh_dir("tamper");
  const std::string cfg = config_path("example31_m6.json");
  REQUIRE(run_cli("solve --config " + cfg + " --out " + dir.string() + " --quiet") == 0);
  auto seqs = sequences_from_csv(read_text_file((dir / "solutions.csv").string()));
  REQUIRE_FALSE(seqs.empty());
  seqs[0][0] += 1e-5;
  write_text_file((dir / "solutions.csv").string(), sequences_to_csv(seqs));
  CHECK(run_cli("verify --config " + cfg + " --out " + dir.string() + " --quiet") == 1);
  fs::remove_all(dir);
}
