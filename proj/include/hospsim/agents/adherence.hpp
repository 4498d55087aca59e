#pragma once

#include "hospsim/agents/types.hpp"
#include "hospsim/sim/rng.hpp"

#include <array>

namespace hospsim {

using ProbRow3 = std::array<double, 3>;
using ProbRow2 = std::array<double, 2>;
using Matrix3 = std::array<ProbRow3, 3>;

/// Compact description of the medication-adherence behaviour: a base
/// adherence transition matrix plus additive shifts of probability mass
/// toward Poor for each patient attribute. Expanded into the full
/// conditional table by build_adherence_params().
struct AdherenceProfile {
  Matrix3 base{{{0.88, 0.09, 0.03}, {0.38, 0.48, 0.14}, {0.18, 0.38, 0.44}}};
  std::array<double, kAgeBands> age_tilt{0.005, 0.0, 0.015};
  std::array<double, kGenders> gender_tilt{0.0, 0.005};
  std::array<double, kTraits> trait_tilt{0.01, 0.0, 0.015};
  std::array<double, kHealthLevels> health_tilt{0.0, 0.01, 0.02};
  double shortage_tilt = 0.20;
  /// Medication availability chain; row/column 0 = available, 1 = shortage.
  std::array<ProbRow2, 2> availability{{{0.95, 0.05}, {0.5, 0.5}}};
  /// Health transition given the new adherence level: [adherence][health] -> row.
  std::array<Matrix3, kAdherenceLevels> health{{
      {{{0.95, 0.05, 0.0}, {0.45, 0.50, 0.05}, {0.15, 0.45, 0.40}}},
      {{{0.85, 0.14, 0.01}, {0.20, 0.65, 0.15}, {0.05, 0.35, 0.60}}},
      {{{0.60, 0.35, 0.05}, {0.05, 0.60, 0.35}, {0.0, 0.25, 0.75}}},
  }};
};

/// Fully conditioned transition tables consumed by drug_behavior_step.
struct AdherenceParams {
  // risk[age][gender][trait][health][availability][current adherence] -> next adherence row
  using RiskTable = std::array<
      std::array<std::array<std::array<std::array<Matrix3, 2>, kHealthLevels>, kTraits>, kGenders>, kAgeBands>;

  RiskTable risk{};
  std::array<ProbRow2, 2> availability{};
  std::array<Matrix3, kAdherenceLevels> health{};

  const ProbRow3& risk_row(AgeBand a, Gender g, Trait t, Health h, bool available, Adherence current) const {
    return risk[static_cast<std::size_t>(a)][static_cast<std::size_t>(g)][static_cast<std::size_t>(t)]
               [static_cast<std::size_t>(h)][available ? 0 : 1][static_cast<std::size_t>(current)];
  }

  /// Throws std::invalid_argument naming the first row that is negative or does not sum to 1 within 1e-12.
  void validate() const;
};

AdherenceParams build_adherence_params(const AdherenceProfile& profile);
const AdherenceParams& default_adherence_params();

struct PatientAgent;

/// One Markov step of medication availability, adherence and health for a
/// patient outside hospital. Sets patient.emergency_flag when adherence is
/// Poor and health is Worsening or Critical. Throws std::logic_error when the
/// patient is in a visit, in hospital or has left.
void drug_behavior_step(RngStream& stream, PatientAgent& patient, const AdherenceParams& params);

}  // namespace hospsim
