#pragma once

#include "hospsim/metrics/responses.hpp"
#include "hospsim/model/config.hpp"

#include <array>
#include <string>
#include <vector>

namespace hospsim {

/// Replication means of one mode.
struct ModeSummary {
  Mode mode = Mode::Hybrid;
  std::vector<ResponseVector> runs;
  double early_dropout = 0.0;
  double avg_system_wait = 0.0;
  double avg_hospital_queue_wait = 0.0;
  double avg_tourist_hospital_queue_wait = 0.0;
  double emergency_before_appointment = 0.0;
  double recovered = 0.0;
  std::array<double, kSpecialtyCount> utilisation{};  // NaN where no replication had a value
};

/// `replications` runs of `config` in `mode` (replication indices 0..n-1,
/// same seed in both modes, so the pairs share arrival streams).
ModeSummary summarize_mode(ScenarioConfig config, Mode mode, int replications);

/// Side-by-side table, one row per measure: measure, goal, hybrid, des_only, des_vs_hybrid.
std::string comparison_csv(const ModeSummary& hybrid, const ModeSummary& des);

}  // namespace hospsim
