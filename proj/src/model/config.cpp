#include "hospsim/model/config.hpp"

#include <cmath>
#include <stdexcept>

namespace hospsim {

char factor_label(std::size_t column) {
  if (column >= kFactorCount) throw std::out_of_range("factor column out of range");
  return static_cast<char>('A' + column);
}

std::size_t factor_column(char label) {
  if (label < 'A' || label > 'P') throw std::invalid_argument(std::string("unknown factor label '") + label + "'");
  return static_cast<std::size_t>(label - 'A');
}

namespace {

void check_triangular(const Triangular& t, const std::string& name) {
  if (!(t.min >= 0.0 && t.min <= t.mode && t.mode <= t.max)) {
    throw std::invalid_argument(name + ": require 0 <= min <= mode <= max");
  }
}

void check_probability(double p, const std::string& name) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(name + " must lie in [0, 1]");
}

}  // namespace

void ClinicalParams::validate() const {
  if (!(arrival_rate_per_day > 0.0)) throw std::invalid_argument("clinical.arrival_rate_per_day must be positive");
  check_probability(tourist_probability, "clinical.tourist_probability");
  if (gp_count < 1) throw std::invalid_argument("clinical.gp_count must be at least 1");
  check_triangular(triage_minutes, "clinical.triage_minutes");
  check_triangular(length_of_stay_days, "clinical.length_of_stay_days");
  check_triangular(home_treatment_days, "clinical.home_treatment_days");
  double sum = 0.0;
  for (double w : recommendation) {
    if (!(w >= 0.0)) throw std::invalid_argument("clinical.recommendation weights must be non-negative");
    sum += w;
  }
  if (!(sum > 0.0)) throw std::invalid_argument("clinical.recommendation weights sum to zero");
  check_probability(recover_after_stay, "clinical.recover_after_stay");
  check_probability(tourist_online_pref, "clinical.tourist_online_pref");
  check_probability(local_online_pref, "clinical.local_online_pref");
  check_probability(hosp_pref, "clinical.hosp_pref");
  for (double w : trait_weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("clinical.trait_weights must be non-negative");
  }
  if (!(0 <= paediatric_max_age && paediatric_max_age < min_age && min_age <= max_age)) {
    throw std::invalid_argument("clinical ages: require 0 <= paediatric_max_age < min_age <= max_age");
  }
}

void ScenarioConfig::validate() const {
  for (std::size_t s = 0; s < kSpecialtyCount; ++s) {
    if (beds[s] < 0) throw std::invalid_argument("beds.section" + std::to_string(s + 1) + " must be non-negative");
    if (specialists[s] < 1) {
      throw std::invalid_argument("specialists.section" + std::to_string(s + 1) + " must be at least 1");
    }
  }
  if (!(K >= 0.0 && K <= 100.0)) throw std::invalid_argument("K must lie in [0, 100]");
  if (!(L >= 0.0 && L <= 100.0)) throw std::invalid_argument("L must lie in [0, 100]");
  if (M != 0 && M != 1) throw std::invalid_argument("M must be 0 or 1");
  if (N != 0 && N != 1) throw std::invalid_argument("N must be 0 or 1");
  if (O != 0 && O != 1) throw std::invalid_argument("O must be 0 or 1");
  if (!(P > 0.0)) throw std::invalid_argument("P must be positive");
  if (!(horizon_days >= 0.0) || !std::isfinite(horizon_days)) {
    throw std::invalid_argument("horizon_days must be finite and non-negative");
  }
  if (!(warmup_days >= 0.0) || !std::isfinite(warmup_days)) {
    throw std::invalid_argument("warmup_days must be finite and non-negative");
  }
  if (replications < 1) throw std::invalid_argument("replications must be at least 1");
  if (coded) {
    for (int v : *coded) {
      if (v != -1 && v != 1) throw std::invalid_argument("coded factor levels must be -1 or +1");
    }
  }
  clinical.validate();
  behaviour.validate();
  build_adherence_params(adherence);
}

ScenarioConfig baseline_config() { return ScenarioConfig{}; }

}  // namespace hospsim
