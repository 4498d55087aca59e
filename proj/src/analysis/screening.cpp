#include "hospsim/analysis/screening.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hospsim {

std::string_view to_string(Goal g) { return g == Goal::Minimize ? "min" : "max"; }

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Up: return "up";
    case Direction::Down: return "down";
    case Direction::NotRetained: return "ns";
  }
  return "ns";
}

const std::vector<ResponseSpec>& screening_responses() {
  static const std::vector<ResponseSpec> specs{
      {"early_dropout", "Early dropout from the system", Goal::Minimize, 3,
       {"AE", "BF", "BP", "CH", "CL", "CP", "EJ", "EL", "EP", "FH", "GH", "GJ", "GM", "HL", "HP", "JM", "JP", "KN", "LO",
        "LP", "MP", "OP"}},
      {"avg_system_wait", "Average waiting time in the system", Goal::Minimize, 2,
       {"AO", "AP", "BP", "CO", "DK", "DP", "EL", "FL", "FP", "HN", "HP", "IN", "LO"}},
      {"avg_tourist_hospital_queue_wait", "Average tourist hospital-queue wait", Goal::Minimize, 1,
       {"AF", "CO", "CP", "EK", "EN", "EO", "IN", "KO", "LO", "MO"}},
      {"emergency_before_appointment", "Emergency patients before appointment", Goal::Minimize, 4,
       {"AF", "EN", "FP", "GP", "JP"}},
      {"recovered", "Recovered patients", Goal::Maximize, 5, {"BG", "EJ", "KN", "LM"}},
      {"utilisation", "Specialist utilisation", Goal::Maximize, 6, {"AF", "FO", "KP"}},
  };
  return specs;
}

Direction DirectionTable::at(char factor, std::string_view response) const {
  const auto f = std::find(factors.begin(), factors.end(), factor);
  const auto r = std::find(responses.begin(), responses.end(), response);
  if (f == factors.end() || r == responses.end()) throw std::out_of_range("DirectionTable::at: unknown factor or response");
  return cells[static_cast<std::size_t>(f - factors.begin())][static_cast<std::size_t>(r - responses.begin())];
}

DirectionTable effect_direction_table(const std::vector<ScreeningModel>& models, const std::vector<char>& factors,
                                      double threshold) {
  DirectionTable t;
  t.factors = factors;
  for (const auto& m : models) t.responses.push_back(m.response);
  for (char f : factors) {
    std::vector<Direction> row;
    const std::string term(1, f);
    for (const auto& m : models) {
      if (!m.retained(term, threshold)) {
        row.push_back(Direction::NotRetained);
      } else {
        row.push_back(*m.coefficient(term) > 0.0 ? Direction::Up : Direction::Down);
      }
    }
    t.cells.push_back(std::move(row));
  }
  return t;
}

std::vector<RetainedTerm> retained_interactions(const std::vector<ScreeningModel>& models, double threshold) {
  std::vector<RetainedTerm> out;
  for (const auto& m : models) {
    for (std::size_t i = 0; i < m.terms.size(); ++i) {
      const std::string& term = m.terms[i];
      if (term == kInterceptTerm || term.size() < 2) continue;
      const auto k = static_cast<Eigen::Index>(i);
      if (std::abs(m.t_ratios(k)) >= threshold) out.push_back({m.response, term, m.coefficients(k), m.t_ratios(k)});
    }
  }
  return out;
}

}  // namespace hospsim
