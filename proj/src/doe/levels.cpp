#include "hospsim/doe/levels.hpp"

#include <cmath>
#include <stdexcept>

namespace hospsim {

const LevelTable& default_level_table() {
  static const LevelTable t{{
      {'A', "beds.section1", 32, 52},
      {'B', "beds.section2", 40, 65},
      {'C', "beds.section3", 56, 91},
      {'D', "beds.section4", 16, 26},
      {'E', "beds.section5", 48, 78},
      {'F', "specialists.section1", 1, 2},
      {'G', "specialists.section2", 4, 8},
      {'H', "specialists.section3", 1, 3},
      {'I', "specialists.section4", 1, 3},
      {'J', "specialists.section5", 2, 4},
      {'K', "tourist online share %", 20, 60},
      {'L', "local online share %", 10, 40},
      {'M', "online bed policy", 0, 1},
      {'N', "in-person bed policy", 0, 1},
      {'O', "tourist bed priority", 0, 1},
      {'P', "slot interval min", 2, 5},
  }};
  return t;
}

ScenarioConfig decode_run(const CodedRow& row, const LevelTable& levels, const ScenarioConfig& base) {
  ScenarioConfig c = base;
  std::array<double, kFactorCount> v{};
  for (std::size_t j = 0; j < kFactorCount; ++j) {
    if (row[j] != -1 && row[j] != 1) {
      throw std::invalid_argument(std::string("factor ") + factor_label(j) + ": coded level must be -1 or +1");
    }
    v[j] = row[j] > 0 ? levels[j].high : levels[j].low;
  }
  for (std::size_t s = 0; s < kSpecialtyCount; ++s) {
    c.beds[s] = static_cast<int>(std::lround(v[s]));
    c.specialists[s] = static_cast<int>(std::lround(v[5 + s]));
  }
  c.K = v[10];
  c.L = v[11];
  c.M = static_cast<int>(std::lround(v[12]));
  c.N = static_cast<int>(std::lround(v[13]));
  c.O = static_cast<int>(std::lround(v[14]));
  c.P = v[15];
  c.coded = row;
  return c;
}

ScenarioConfig decode_run(const std::map<char, int>& row, const LevelTable& levels, const ScenarioConfig& base) {
  CodedRow coded{};
  std::array<bool, kFactorCount> seen{};
  for (const auto& [label, value] : row) {
    const std::size_t j = factor_column(label);
    coded[j] = value;
    seen[j] = true;
  }
  for (std::size_t j = 0; j < kFactorCount; ++j) {
    if (!seen[j]) throw std::invalid_argument(std::string("factor ") + factor_label(j) + " missing from row");
  }
  return decode_run(coded, levels, base);
}

CodedRow final_setting() { return parse_setting("+++++-----+-+---"); }

CodedRow parse_setting(const std::string& text) {
  if (text == "final") return final_setting();
  if (text.size() != kFactorCount) {
    throw std::invalid_argument("setting must be 'final' or 16 '+'/'-' characters, got '" + text + "'");
  }
  CodedRow row{};
  for (std::size_t j = 0; j < kFactorCount; ++j) {
    if (text[j] == '+') {
      row[j] = 1;
    } else if (text[j] == '-') {
      row[j] = -1;
    } else {
      throw std::invalid_argument(std::string("setting: factor ") + factor_label(j) + " must be '+' or '-'");
    }
  }
  return row;
}

std::string format_setting(const CodedRow& row) {
  std::string s;
  for (int v : row) s += v > 0 ? '+' : '-';
  return s;
}

}  // namespace hospsim
