#pragma once

#include "hospsim/metrics/trace.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hospsim {

struct ResponseVector {
  long early_dropout = 0;
  double avg_system_wait = 0.0;                  // days
  double avg_tourist_hospital_queue_wait = 0.0;  // days
  long emergency_before_appointment = 0;
  long recovered = 0;
  std::array<std::optional<double>, kSpecialtyCount> utilisation{};  // percent, empty when nothing was scheduled
  std::optional<double> utilisation_overall;
  double avg_hospital_queue_wait = 0.0;  // days

  bool empty = false;  // no patient arrived after warm-up
  long cohort = 0;
  long in_system = 0;
  long in_home_treatment = 0;
};

/// Response definitions over the cohort of patients arriving at or after the
/// end of warm-up:
///  - early_dropout: cohort patients who left before finishing treatment
///  - avg_system_wait: per patient, total time in the triage queue, the
///    clinic/video queue after the appointment time and the bed queue,
///    averaged over the cohort; open spans are cut at the end of the run
///  - avg_tourist_hospital_queue_wait / avg_hospital_queue_wait: mean length of
///    the bed-queue spans of tourist / all cohort patients
///  - emergency_before_appointment: escalations raised by cohort patients
///  - recovered: cohort patients discharged recovered
///  - utilisation: 100 · worked / scheduled clinic and online minutes in the
///    reporting window, per specialty
ResponseVector compute_responses(const ReplicationTrace& trace);

struct DoctorAccumulator {
  SpecialtyIndex specialty = 0;
  double worked_minutes = 0.0;
  double scheduled_minutes = 0.0;
};

/// 100 · worked / scheduled per specialty; empty where nothing was scheduled.
std::array<std::optional<double>, kSpecialtyCount> specialist_utilisation(const std::vector<DoctorAccumulator>& doctors);

/// Accumulators restricted to the window [from, to] from the trace intervals.
std::vector<DoctorAccumulator> doctor_accumulators(const ReplicationTrace& trace, SimTime from, SimTime to);

/// Fixed results-table columns after run_id, replication, seed and A..P.
const std::vector<std::string>& response_columns();
/// Response values in response_columns() order; missing utilisation is NaN.
std::vector<double> response_values(const ResponseVector& r);

}  // namespace hospsim
