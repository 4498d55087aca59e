#pragma once

#include "hospsim/agents/patient.hpp"
#include "hospsim/agents/types.hpp"
#include "hospsim/sim/schedule.hpp"
#include "hospsim/sim/time.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hospsim {

struct DoctorAgent {
  DoctorId id = 0;
  SpecialtyIndex specialization = 0;
  double popularity = 1.0;
  DoctorState state = DoctorState::Home;
  SimTime state_since;

  // Booked patients in booking order with the aligned visit mode (true = in person).
  std::vector<PatientId> patient_list;
  std::vector<bool> visit_mode_flags;

  double worked_minutes = 0.0;
  double scheduled_minutes = 0.0;

  void add_booking(PatientId p, Channel c);
  /// Returns false when the patient had no booking.
  bool remove_booking(PatientId p);
  std::size_t load() const { return patient_list.size(); }
};

enum class DoctorTrigger : std::uint8_t {
  GotoClinic,      // clinic block starts
  GotoHospital,    // hospital block starts
  OnlineSession,   // online block starts
  BlockEnd,        // block over; idle doctor goes home
  StartFileReview,
  StartInPersonVisit,
  StartOnlineVisit,
  ExamDone,        // checkup or questioning finished, decision pending
  Contested,       // patient disagrees, one re-evaluation
  ReEvaluated,
  VisitDone,
  StartService,    // discharge paperwork on the ward
  ServiceDone,
  FileReviewDone,
};

std::string_view to_string(DoctorTrigger t);

struct DoctorTriggerContext {
  SimTime now;
  /// Block the doctor is in after the transition, used to pick the idle state.
  std::optional<Activity> block;
  /// Length of the block that is starting (GotoClinic / OnlineSession).
  double block_minutes = 0.0;
};

struct DoctorTransition {
  DoctorState from;
  DoctorState to;
};

/// Doctor state-chart. Clinic and online blocks add their full length to
/// scheduled_minutes at block start whether or not the doctor is busy;
/// time spent in file review and visit substates is added to worked_minutes
/// when the substate is left, so work past the end of a block is overtime.
/// Throws ContractViolation for a trigger with no edge from the current state.
DoctorTransition doctor_transition(DoctorAgent& doctor, DoctorTrigger trigger, const DoctorTriggerContext& ctx);

bool doctor_edge_allowed(DoctorState from, DoctorState to);

/// Idle state for the block the doctor is in.
DoctorState idle_state(std::optional<Activity> block);

bool is_idle(DoctorState s);
bool is_working(DoctorState s);

}  // namespace hospsim
