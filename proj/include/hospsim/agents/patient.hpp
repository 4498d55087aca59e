#pragma once

#include "hospsim/agents/types.hpp"
#include "hospsim/sim/time.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hospsim {

using PatientId = std::uint64_t;
using DoctorId = std::size_t;

/// Thrown when an agent receives a trigger its state-chart has no edge for.
/// This is a simulation bug; the replication is aborted.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

struct PatientAgent {
  PatientId file_number = 0;
  SpecialtyIndex disease = 0;
  PatientType type = PatientType::Local;
  bool online_pref = false;
  bool hosp_pref = false;
  int age = 40;
  Gender gender = Gender::Female;
  Trait trait = Trait::Normal;

  Adherence adherence = Adherence::Good;
  Health health = Health::Stable;
  bool medication_available = true;
  bool emergency_flag = false;
  bool leave_flag = false;
  std::uint64_t adherence_steps = 0;

  // Worry accrues one unit per hour from `worry_since` while the patient waits.
  int worry_base = 0;
  std::optional<SimTime> worry_since;

  PatientState state = PatientState::NeedService;
  Channel channel = Channel::Online;
  std::optional<DoctorId> doctor;
  bool seen_before = false;

  SimTime arrival;
  SimTime request_time;  // start of the current episode of waiting for care
  SimTime state_since;
  SimTime bed_request_time;
  std::optional<SimTime> appointment;

  int worry_counter(SimTime now) const;
  void start_worry(SimTime now);
  void reset_worry();
};

enum class PatientTrigger : std::uint8_t {
  Referred,             // request reviewed, visit type proposed
  ConfirmationTimeout,  // no disagreement within the window
  Disagree,             // patient rejects proposed channel
  AppointmentDue,
  EmergencyVisitDue,
  ServiceStart,
  DecisionReady,
  Contest,
  Accept,
  BedAdmitted,
  BookingDueNoBed,
  StayEnded,
  SelfDischarge,
  RequestAgain,
  EmergencyRaised,
  WorryThreshold,
  ChangeDoctor,
  Leave,
};

std::string_view to_string(PatientTrigger t);

/// Where an accepted hospitalisation leads, decided by the bed-queue policy.
enum class BedDecision : std::uint8_t { AdmitNow, WaitInHome, WaitForEmptyBed };

struct PatientTriggerContext {
  SimTime now;
  Recommendation recommendation = Recommendation::HomeTreatment;  // Accept
  BedDecision bed = BedDecision::WaitForEmptyBed;                 // Accept with Hospitalize
  bool recovered = false;                                         // StayEnded
};

/// Side effects the hospital model must carry out after a transition.
enum class PatientEffect : std::uint8_t {
  BookVisit,
  CancelBooking,
  JoinDoctorQueue,
  JoinDoctorQueueUrgent,
  ResetWorry,
  StartWorry,
  ScheduleRequestAgain,
  LeaveBedQueue,
  ReleaseBed,
  ExitRecovered,
  ExitDropout,
};

struct PatientTransition {
  PatientState from;
  PatientState to;
  std::vector<PatientEffect> effects;
};

/// Applies one trigger to the treatment state machine. Mutates only the
/// patient's state bookkeeping (state, channel on Disagree, worry, leave
/// flag); queue and calendar effects are returned for the caller to execute.
/// Throws ContractViolation for a trigger with no edge from the current state.
PatientTransition patient_transition(PatientAgent& patient, PatientTrigger trigger, const PatientTriggerContext& ctx);

/// True when the state-chart has an edge from `from` to `to`.
bool patient_edge_allowed(PatientState from, PatientState to);

/// Five-day review: raises the leave flag once the current wait exceeds the
/// threshold. Returns true when the flag was raised by this call.
bool five_day_review(PatientAgent& patient, SimTime now, double leave_threshold_minutes);

}  // namespace hospsim
