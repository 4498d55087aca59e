// hospsim: command-line driver for the hospital simulator, the screening
// design and its analysis.

#include "hospsim/agents/patient.hpp"
#include "hospsim/analysis/pipeline.hpp"
#include "hospsim/doe/design.hpp"
#include "hospsim/doe/levels.hpp"
#include "hospsim/doe/orchestrate.hpp"
#include "hospsim/io/config_file.hpp"
#include "hospsim/io/csv.hpp"
#include "hospsim/io/manifest.hpp"
#include "hospsim/model/compare.hpp"
#include "hospsim/model/hospital.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace hospsim;

namespace {

enum Exit { kOk = 0, kUsage = 1, kConfig = 2, kRuntime = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunFlags {
  std::string config = "baseline";
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::optional<double> horizon_days;
  std::optional<double> warmup_days;
  std::optional<std::string> mode;
  std::string setting;
  std::string out = ".";
};

void add_run_flags(CLI::App* app, RunFlags& f, bool with_mode) {
  app->add_option("--config", f.config, "config file, or 'baseline' for the built-in preset");
  app->add_option("--seed", f.seed, "master seed (required)")->required();
  app->add_option("--reps", f.reps, "replications")->check(CLI::PositiveNumber);
  app->add_option("--horizon-days", f.horizon_days, "reporting horizon after warm-up")->check(CLI::NonNegativeNumber);
  app->add_option("--warmup-days", f.warmup_days, "warm-up excluded from statistics")->check(CLI::NonNegativeNumber);
  if (with_mode) app->add_option("--mode", f.mode, "hybrid or des-only")->check(CLI::IsMember({"hybrid", "des-only"}));
  app->add_option("--out", f.out, "output directory");
}

ScenarioConfig base_config(const RunFlags& f) {
  ScenarioConfig c = f.config == "baseline" ? baseline_config() : load_config(f.config);
  if (f.horizon_days) c.horizon_days = *f.horizon_days;
  if (f.warmup_days) c.warmup_days = *f.warmup_days;
  if (f.mode) c.mode = *f.mode == "hybrid" ? Mode::Hybrid : Mode::DesOnly;
  if (f.reps) c.replications = *f.reps;
  c.master_seed = *f.seed;
  return c;
}

CodedRow setting_or_usage(const std::string& text) {
  try {
    return parse_setting(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::string> g_args;

RunManifest manifest_for(const std::string& sub, const std::string& started) {
  RunManifest m;
  m.subcommand = sub;
  m.arguments = g_args;
  m.started_at = started;
  return m;
}

void finish(const fs::path& dir, RunManifest m) {
  m.finished_at = utc_timestamp();
  m.outputs.push_back("manifest.json");
  write_manifest(dir, m);
}

int cmd_simulate(const RunFlags& f) {
  const std::string started = utc_timestamp();
  ScenarioConfig c = base_config(f);
  if (!f.setting.empty()) c = decode_run(setting_or_usage(f.setting), default_level_table(), c);
  const fs::path dir = f.out;
  std::string csv = join_csv(results_header()) + "\n";
  for (int r = 0; r < c.replications; ++r) {
    const ResponseVector v = run_replication(c, static_cast<std::uint64_t>(r)).responses;
    csv += format_result_row(0, static_cast<std::uint64_t>(r), c.master_seed, c.coded, v) + "\n";
    std::fprintf(stderr, "replication %d: tourist wait %.3f d, system wait %.3f d, dropouts %ld, recovered %ld\n", r,
                 v.avg_tourist_hospital_queue_wait, v.avg_system_wait, v.early_dropout, v.recovered);
  }
  write_text_file(dir / "results.csv", csv);
  write_text_file(dir / "config.conf", dump_config(c));
  RunManifest m = manifest_for("simulate", started);
  m.config_hash = config_hash(c);
  m.master_seed = c.master_seed;
  m.has_seed = true;
  m.outputs = {"results.csv", "config.conf"};
  finish(dir, m);
  return kOk;
}

int cmd_doe_gen(const std::string& out) {
  const std::string started = utc_timestamp();
  const Design d = generate_design();
  const DesignReport rep = verify_design(d.matrix, d.labels);
  if (!rep.ok()) {
    for (const auto& p : rep.problems) std::fprintf(stderr, "design: %s\n", p.c_str());
    return kRuntime;
  }
  write_text_file(fs::path(out) / "design.csv", design_csv(d));
  write_text_file(fs::path(out) / "design_generators.txt", design_generators_text(d, rep));
  RunManifest m = manifest_for("doe gen", started);
  m.outputs = {"design.csv", "design_generators.txt"};
  finish(out, m);
  std::fprintf(stderr, "design: %ld runs, %ld factors, resolution %d\n", static_cast<long>(d.matrix.rows()),
               static_cast<long>(d.matrix.cols()), rep.resolution.value_or(0));
  return kOk;
}

int cmd_doe_run(const RunFlags& f, const std::string& design_path, bool resume, unsigned threads) {
  const std::string started = utc_timestamp();
  ScenarioConfig c = base_config(f);
  if (!f.reps) c.replications = 1;
  const Design d = design_path.empty() ? generate_design() : read_design_csv(design_path);
  const DesignReport rep = verify_design(d.matrix, d.labels);
  if (!rep.ok()) {
    for (const auto& p : rep.problems) std::fprintf(stderr, "design: %s\n", p.c_str());
    return kRuntime;
  }
  OrchestrateOptions o;
  o.replications = c.replications;
  o.master_seed = c.master_seed;
  o.threads = threads;
  o.resume = resume;
  const fs::path dir = f.out;
  const OrchestrateSummary s = orchestrate(d.matrix, default_level_table(), c, o, dir / "results.csv");
  write_text_file(dir / "config.conf", dump_config(c));
  RunManifest m = manifest_for("doe run", started);
  m.config_hash = config_hash(c);
  m.master_seed = c.master_seed;
  m.has_seed = true;
  m.outputs = {"results.csv", "config.conf"};
  finish(dir, m);
  std::fprintf(stderr, "doe run: %zu rows, %zu resumed, %zu executed\n", s.total, s.skipped, s.executed);
  return kOk;
}

int cmd_analyze(const std::string& results, const std::string& out, const AnalysisOptions& o) {
  const std::string started = utc_timestamp();
  const Analysis a = analyze(read_csv(results), o);
  RunManifest m = manifest_for("analyze", started);
  m.outputs = write_analysis(a, o, out);
  finish(out, m);
  std::fputs(recommendation_text(a.recommendation).c_str(), stdout);
  return kOk;
}

int cmd_recommend(const std::string& results, const std::string& out, const AnalysisOptions& o) {
  const std::string started = utc_timestamp();
  const Analysis a = analyze(read_csv(results), o);
  const std::string text = recommendation_text(a.recommendation);
  std::fputs(text.c_str(), stdout);
  if (!out.empty()) {
    write_text_file(fs::path(out) / "recommendation.txt", text);
    RunManifest m = manifest_for("recommend", started);
    m.outputs = {"recommendation.txt"};
    finish(out, m);
  }
  return kOk;
}

int cmd_compare(const RunFlags& f, const std::string& setting) {
  const std::string started = utc_timestamp();
  ScenarioConfig c = base_config(f);
  if (!f.horizon_days) c.horizon_days = 365.0;
  if (!f.reps) c.replications = 10;
  if (setting != "baseline") c = decode_run(setting_or_usage(setting), default_level_table(), c);
  const ModeSummary h = summarize_mode(c, Mode::Hybrid, c.replications);
  const ModeSummary d = summarize_mode(c, Mode::DesOnly, c.replications);
  const fs::path dir = f.out;
  const std::string table = comparison_csv(h, d);
  write_text_file(dir / "comparison.csv", table);
  for (const auto* s : {&h, &d}) {
    std::string csv = join_csv(results_header()) + "\n";
    for (std::size_t r = 0; r < s->runs.size(); ++r) {
      csv += format_result_row(0, r, c.master_seed, c.coded, s->runs[r]) + "\n";
    }
    write_text_file(dir / (s->mode == Mode::Hybrid ? "results_hybrid.csv" : "results_des_only.csv"), csv);
  }
  write_text_file(dir / "config.conf", dump_config(c));
  RunManifest m = manifest_for("compare", started);
  m.config_hash = config_hash(c);
  m.master_seed = c.master_seed;
  m.has_seed = true;
  m.outputs = {"comparison.csv", "results_hybrid.csv", "results_des_only.csv", "config.conf"};
  finish(dir, m);
  std::fputs(table.c_str(), stdout);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) g_args.emplace_back(argv[i]);

  CLI::App app{"Hospital simulation with local patients and medical tourists: simulation, screening design, analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  RunFlags sim;
  auto* simulate = app.add_subcommand("simulate", "run one scenario for N replications");
  add_run_flags(simulate, sim, true);
  simulate->add_option("--setting", sim.setting, "coded setting over the config: 'final' or 16 +/- characters");

  auto* doe = app.add_subcommand("doe", "screening design");
  doe->require_subcommand(1);
  std::string gen_out = ".";
  auto* doe_gen = doe->add_subcommand("gen", "write the 256-run design");
  doe_gen->add_option("--out", gen_out, "output directory");
  RunFlags drun;
  std::string design_path;
  bool resume = false;
  unsigned threads = 0;
  auto* doe_run = doe->add_subcommand("run", "run every design row");
  add_run_flags(doe_run, drun, true);
  doe_run->add_option("--design", design_path, "design.csv (default: generated design)")->check(CLI::ExistingFile);
  doe_run->add_flag("--resume", resume, "continue an interrupted results.csv");
  doe_run->add_option("--threads", threads, "worker threads (0: all cores)");

  std::string results;
  std::string an_out = ".";
  AnalysisOptions aopt;
  auto* analyze_cmd = app.add_subcommand("analyze", "screening regressions and plot data");
  analyze_cmd->add_option("--results", results, "results.csv from doe run")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--out", an_out, "output directory");
  analyze_cmd->add_option("--threshold", aopt.threshold, "|t| cutoff for retained terms");
  analyze_cmd->add_flag("--all-2fi", aopt.all_two_factor, "offer every two-factor interaction");

  std::string rec_results;
  std::string rec_out;
  AnalysisOptions ropt;
  auto* recommend = app.add_subcommand("recommend", "factor-level recommendation");
  recommend->add_option("--results", rec_results, "results.csv from doe run")->required()->check(CLI::ExistingFile);
  recommend->add_option("--out", rec_out, "also write recommendation.txt here");
  recommend->add_option("--threshold", ropt.threshold, "|t| cutoff for retained terms");
  recommend->add_flag("--all-2fi", ropt.all_two_factor, "offer every two-factor interaction");

  RunFlags cmp;
  std::string setting = "final";
  auto* compare = app.add_subcommand("compare", "hybrid vs DES-only at one coded setting");
  add_run_flags(compare, cmp, false);
  compare->add_option("--setting", setting, "'final', 'baseline' or 16 +/- characters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (doe_gen->parsed()) return cmd_doe_gen(gen_out);
    if (doe_run->parsed()) return cmd_doe_run(drun, design_path, resume, threads);
    if (analyze_cmd->parsed()) return cmd_analyze(results, an_out, aopt);
    if (recommend->parsed()) return cmd_recommend(rec_results, rec_out, ropt);
    if (compare->parsed()) return cmd_compare(cmp, setting);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const ContractViolation& e) {
    std::fprintf(stderr, "contract violation: %s\n", e.what());
    return kRuntime;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kRuntime;
  }
  return kUsage;
}
