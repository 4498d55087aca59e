#pragma once

#include "hospsim/model/config.hpp"

#include <array>
#include <map>
#include <string>

namespace hospsim {

struct FactorLevels {
  char label = 'A';
  std::string name;
  double low = 0.0;
  double high = 0.0;
};

using LevelTable = std::array<FactorLevels, kFactorCount>;

/// Low/high values of the sixteen screening factors.
const LevelTable& default_level_table();

/// Scenario for one coded row; everything the row does not set comes from `base`.
/// Throws std::invalid_argument for entries other than -1/+1.
ScenarioConfig decode_run(const CodedRow& row, const LevelTable& levels = default_level_table(),
                          const ScenarioConfig& base = baseline_config());

/// Same, keyed by factor label; unknown labels and missing factors throw.
ScenarioConfig decode_run(const std::map<char, int>& row, const LevelTable& levels = default_level_table(),
                          const ScenarioConfig& base = baseline_config());

/// Recommended final setting: A-E high, F-J low, K high, L low, M high, N-P low.
CodedRow final_setting();

/// "final", or sixteen '+'/'-' characters in A..P order. Throws std::invalid_argument otherwise.
CodedRow parse_setting(const std::string& text);

/// Sixteen '+'/'-' characters.
std::string format_setting(const CodedRow& row);

}  // namespace hospsim
