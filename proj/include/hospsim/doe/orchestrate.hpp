#pragma once

#include "hospsim/doe/design.hpp"
#include "hospsim/doe/levels.hpp"
#include "hospsim/metrics/responses.hpp"

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hospsim {

/// run_id, replication, seed, A..P, then response_columns().
std::vector<std::string> results_header();

/// One results row (no newline). Coded columns are NA when `coded` is empty.
std::string format_result_row(int run_id, std::uint64_t replication, std::uint64_t seed,
                              const std::optional<CodedRow>& coded, const ResponseVector& r);

/// design.csv text: header A..P, one row per run.
std::string design_csv(const Design& design);
/// Sidecar text: generator words, defining-relation word-length pattern and resolution.
std::string design_generators_text(const Design& design, const DesignReport& report);
/// Reads design.csv back; throws std::runtime_error on a bad header or entry.
Design read_design_csv(const std::filesystem::path& path);

class ResumeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct OrchestrateOptions {
  int replications = 1;
  std::uint64_t master_seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
  bool resume = false;
  /// Stop after appending this many new rows (interrupt simulation).
  std::size_t max_new_rows = std::numeric_limits<std::size_t>::max();
};

struct OrchestrateSummary {
  std::size_t total = 0;
  std::size_t skipped = 0;   // already present when resuming
  std::size_t executed = 0;
};

/// Runs every (design row, replication) pair and appends one row each to
/// `results`, in (run, replication) order. Run r (1-based run_id) uses seed
/// derive_run_seed(master_seed, r) and replication index rep.
/// Without resume an existing file is replaced. With resume the existing
/// header must match and its rows must be the leading pairs of this plan
/// (a trailing partial line is dropped); the remaining pairs are run.
/// Throws ResumeError when the file does not fit the plan.
OrchestrateSummary orchestrate(const CodedMatrix<int>& design, const LevelTable& levels, const ScenarioConfig& base,
                               const OrchestrateOptions& options, const std::filesystem::path& results);

}  // namespace hospsim
