#pragma once

#include "hospsim/agents/adherence.hpp"
#include "hospsim/agents/behaviour.hpp"
#include "hospsim/agents/types.hpp"
#include "hospsim/sim/distributions.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace hospsim {

inline constexpr std::size_t kFactorCount = 16;
using CodedRow = std::array<int, kFactorCount>;

/// Factor label 'A'..'P' for a zero-based column.
char factor_label(std::size_t column);
/// Zero-based column of a factor label; throws std::invalid_argument for anything outside A..P.
std::size_t factor_column(char label);

/// Process parameters that the case data does not pin down.
struct ClinicalParams {
  double arrival_rate_per_day = 10.0;
  /// Per-arrival tourist probability: 1/11 reads "one tourist for every ten
  /// locals" as a 1:10 ratio; set to 0.1 for the one-in-ten reading.
  double tourist_probability = 1.0 / 11.0;
  int gp_count = 3;
  Triangular triage_minutes = Triangular::symmetric(5.0, 10.0);
  Triangular length_of_stay_days{10.0, 30.0, 20.0};
  Triangular home_treatment_days = Triangular::symmetric(3.0, 10.0);
  /// Weights of Discharge, HomeTreatment and Hospitalize at the end of a visit.
  std::array<double, 3> recommendation{0.10, 0.20, 0.70};
  double recover_after_stay = 0.25;
  double tourist_online_pref = 0.6;
  double local_online_pref = 0.3;
  double hosp_pref = 0.3;
  std::array<double, kTraits> trait_weights{0.30, 0.45, 0.25};
  int min_age = 18;
  int max_age = 85;
  int paediatric_max_age = 17;

  void validate() const;
};

struct ScenarioConfig {
  std::optional<CodedRow> coded;
  std::array<int, kSpecialtyCount> beds{40, 50, 70, 20, 60};
  std::array<int, kSpecialtyCount> specialists{1, 6, 2, 2, 3};
  double K = 20.0;  // tourist online share, percent
  double L = 10.0;  // local online share, percent
  int M = 0;        // online pathway bed policy: 0 queue, 1 scheduled booking
  int N = 0;        // in-person pathway bed policy
  int O = 0;        // 1 = tourists ahead of locals in the bed queue
  double P = 5.0;   // slot interval, minutes

  double horizon_days = 300.0;
  double warmup_days = 10.0;
  Mode mode = Mode::Hybrid;
  int replications = 1;
  std::uint64_t master_seed = 0;

  ClinicalParams clinical;
  BehaviourParams behaviour;
  AdherenceProfile adherence;

  /// Throws std::invalid_argument naming the first bad field.
  void validate() const;

  SimTime warmup_end() const { return SimTime::from_days(warmup_days); }
  SimTime end() const { return SimTime::from_days(warmup_days + horizon_days); }
};

ScenarioConfig baseline_config();

}  // namespace hospsim
