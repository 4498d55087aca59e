#pragma once

#include "hospsim/agents/doctor.hpp"
#include "hospsim/agents/patient.hpp"
#include "hospsim/sim/rng.hpp"

namespace hospsim {

/// Behavioural constants of the agent layer. All of these are modelling
/// choices rather than measured values and can be overridden from the
/// scenario configuration.
struct BehaviourParams {
  double anxious_factor = 1.25;
  double disagree_mismatch = 0.5;   // preference contradicts the proposal
  double disagree_match = 0.05;
  double channel_disagree_mismatch = 0.15; // same, for the proposed visit channel
  double channel_disagree_match = 0.05;
  double recheck_yield = 0.5;       // chance the doctor adopts the patient's preference after re-evaluation
  double channel_pref_shift = 0.10;
  double confirmation_window_minutes = 60.0;
  int worry_threshold = 100;
  double leave_threshold_days = 7.0;
  bool five_day_timer = true;
  int shortage_threshold = 3;
  double doctor_change_scale = 0.5;
  double self_discharge_prob = 0.01;
  double popularity_completed = 1.02;
  double popularity_contested = 0.99;
  double popularity_abandoned = 0.95;
  double popularity_min = 0.1;
  double popularity_max = 10.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Visit or file-review length in minutes. `behavioural` selects the agent
/// layer: anxious patients take anxious_factor times longer and a contested
/// recommendation adds one more pass of the same distribution. With
/// behavioural=false the base distribution is used unchanged.
/// Throws std::invalid_argument when the doctor's specialty differs from the patient's disease.
double consultation_duration(RngStream& stream, const DoctorAgent& doctor, const PatientAgent& patient,
                             Channel channel, VisitPhase phase, bool behavioural, const BehaviourParams& params,
                             bool contested = false);

double update_popularity(DoctorAgent& doctor, VisitOutcome outcome, const BehaviourParams& params);

/// Chance that a patient rejects a proposed channel at confirmation.
double channel_disagreement_probability(const PatientAgent& patient, Channel proposed, const BehaviourParams& params);

/// Chance that a patient contests the doctor's recommendation.
double recommendation_disagreement_probability(const PatientAgent& patient, Recommendation rec,
                                               const BehaviourParams& params);

}  // namespace hospsim
