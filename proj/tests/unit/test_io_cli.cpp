#include <doctest.h>

#include "cli.hpp"
#include "hospsim/io/config_file.hpp"
#include "hospsim/io/csv.hpp"
#include "hospsim/io/manifest.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>

using namespace hospsim;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hospsim_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("empty config is the baseline") {
  const ScenarioConfig c = parse_config("");
  CHECK(c.beds == std::array<int, 5>{40, 50, 70, 20, 60});
  CHECK(c.specialists == std::array<int, 5>{1, 6, 2, 2, 3});
  CHECK(dump_config(c) == dump_config(baseline_config()));
  CHECK(dump_config(parse_config("# only a comment\n\n   \n")) == dump_config(baseline_config()));
}

TEST_CASE("single override") {
  const ScenarioConfig c = parse_config("P = 2\n");
  CHECK(c.P == 2.0);
  ScenarioConfig expect = baseline_config();
  expect.P = 2.0;
  CHECK(dump_config(c) == dump_config(expect));
}

TEST_CASE("config errors name the field") {
  try {
    parse_config("beds.section3 = -1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "beds.section3");
    CHECK(std::string(e.what()).find("beds.section3") != std::string::npos);
  }
  try {
    parse_config("\nbeds.section9 = 4\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_config("P = 2\nP = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("P = fast\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("P 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("clinical.length_of_stay_days = 5, 1, 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("mode = sometimes\n"), ConfigError);
}

TEST_CASE("structured values") {
  const ScenarioConfig c = parse_config(
      "clinical.length_of_stay_days = 2, 6, 4\n"
      "clinical.triage_minutes = 4, 8\n"
      "mode = des-only\n"
      "behaviour.five_day_timer = false\n"
      "adherence.availability = 0.9, 0.1, 0.4, 0.6\n");
  CHECK(c.clinical.length_of_stay_days.mode == 4.0);
  CHECK(c.clinical.triage_minutes.mode == 6.0);
  CHECK(c.mode == Mode::DesOnly);
  CHECK_FALSE(c.behaviour.five_day_timer);
  CHECK(c.adherence.availability[1][1] == 0.6);
}

TEST_CASE("dump and parse round trip, hash follows content") {
  ScenarioConfig c = baseline_config();
  c.clinical.hosp_pref = 0.1 + 0.2;  // not exactly representable in short decimal
  c.K = 60;
  const ScenarioConfig back = parse_config(dump_config(c));
  CHECK(back.clinical.hosp_pref == c.clinical.hosp_pref);
  CHECK(dump_config(back) == dump_config(c));
  CHECK(config_hash(back) == config_hash(c));
  CHECK(config_hash(c) != config_hash(baseline_config()));
  CHECK(config_hash(c).size() == 16);
  for (const auto& key : config_keys()) CHECK(dump_config(c).find(key + " = ") != std::string::npos);
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("csv helpers") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(NAN) == "NA");
  CHECK(std::isnan(parse_number("NA")));
  CHECK(parse_number("2.5") == 2.5);
  CHECK_THROWS_AS(parse_number("2.5x"), std::invalid_argument);
  CHECK(split_csv_line("a,,b") == std::vector<std::string>{"a", "", "b"});
  CHECK(join_csv({"x", "y"}) == "x,y");
}

TEST_CASE("manifest contents") {
  const fs::path dir = scratch("manifest");
  RunManifest m;
  m.subcommand = "simulate";
  m.arguments = {"--seed", "7"};
  m.master_seed = 7;
  m.has_seed = true;
  m.outputs = {"results.csv"};
  m.started_at = m.finished_at = utc_timestamp();
  write_manifest(dir, m);
  const auto j = nlohmann::json::parse(testsupport::slurp(dir / "manifest.json"));
  CHECK(j["tool_version"] == std::string(kToolVersion));
  CHECK(j["master_seed"] == 7);
  CHECK(j["outputs"][0] == "results.csv");
  fs::remove_all(dir);
}

TEST_CASE("simulate is byte-identical across reruns") {
  const fs::path dir = scratch("simulate");
  for (const char* sub : {"a", "b"}) {
    const auto r = testsupport::run_cli("simulate --config baseline --reps 2 --seed 7 --horizon-days 40 --out '" +
                                            (dir / sub).string() + "'",
                                        dir / "log.txt");
    REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  }
  CHECK(testsupport::slurp(dir / "a" / "results.csv") == testsupport::slurp(dir / "b" / "results.csv"));
  const CsvTable t = read_csv(dir / "a" / "results.csv");
  CHECK(t.rows.size() == 2);
  CHECK(fs::exists(dir / "a" / "manifest.json"));
  // The stored config reproduces the run.
  const ScenarioConfig stored = load_config(dir / "a" / "config.conf");
  CHECK(stored.horizon_days == 40.0);
  fs::remove_all(dir);
}

TEST_CASE("doe gen writes the design") {
  const fs::path dir = scratch("gen");
  const auto r = testsupport::run_cli("doe gen --out '" + dir.string() + "'", dir / "log.txt");
  REQUIRE(r.exit_code == 0);
  const CsvTable t = read_csv(dir / "design.csv");
  CHECK(t.rows.size() == 256);
  CHECK(t.header.front() == "A");
  CHECK(t.header.back() == "P");
  CHECK(fs::exists(dir / "design_generators.txt"));
  fs::remove_all(dir);
}

TEST_CASE("compare writes the 11-row table") {
  const fs::path dir = scratch("compare");
  const auto r = testsupport::run_cli(
      "compare --setting final --seed 3 --reps 1 --horizon-days 30 --out '" + dir.string() + "'", dir / "log.txt");
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  const CsvTable t = read_csv(dir / "comparison.csv");
  CHECK(t.header == std::vector<std::string>{"measure", "goal", "hybrid", "des_only", "des_vs_hybrid"});
  REQUIRE(t.rows.size() == 11);
  for (const auto& row : t.rows) CHECK((row[1] == "min." || row[1] == "max."));
  fs::remove_all(dir);
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("exit");
  CHECK(testsupport::run_cli("simulate --config baseline --out '" + dir.string() + "'", dir / "log").exit_code == 1);
  CHECK(testsupport::run_cli("bogus", dir / "log").exit_code == 1);
  CHECK(testsupport::run_cli("compare --setting +-+ --seed 1 --out '" + dir.string() + "'", dir / "log").exit_code ==
        1);

  write_text_file(dir / "bad.conf", "beds.section3 = -1\n");
  const auto bad = testsupport::run_cli(
      "simulate --config '" + (dir / "bad.conf").string() + "' --seed 1 --out '" + (dir / "o").string() + "'",
      dir / "log");
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("beds.section3") != std::string::npos);

  write_text_file(dir / "unknown.conf", "beds.sectionX = 1\n");
  CHECK(testsupport::run_cli(
            "simulate --config '" + (dir / "unknown.conf").string() + "' --seed 1 --out '" + (dir / "o").string() + "'",
            dir / "log")
            .exit_code == 2);
  fs::remove_all(dir);
}

TEST_CASE("shipped baseline file equals the preset") {
  const ScenarioConfig c = load_config(fs::path(HOSPSIM_DATA_DIR) / "baseline.conf");
  CHECK(dump_config(c) == dump_config(baseline_config()));
}
