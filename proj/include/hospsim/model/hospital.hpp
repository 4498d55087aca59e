#pragma once

#include "hospsim/agents/doctor.hpp"
#include "hospsim/agents/patient.hpp"
#include "hospsim/agents/section.hpp"
#include "hospsim/metrics/responses.hpp"
#include "hospsim/metrics/trace.hpp"
#include "hospsim/model/config.hpp"
#include "hospsim/sim/rng.hpp"
#include "hospsim/sim/schedule.hpp"

#include <span>
#include <unordered_map>
#include <utility>

namespace hospsim {

/// New patient with attributes drawn from `stream`.
PatientAgent spawn_patient(RngStream& stream, PatientId id, SimTime now, const ClinicalParams& clinical);

/// Visit channel and doctor after GP triage. The online probability is K
/// (tourists) or L (locals), shifted by +pref_shift when the patient prefers
/// online and by -pref_shift otherwise. The doctor is drawn among the
/// same-specialty doctors with weight popularity / (1 + booked patients).
/// Throws std::invalid_argument when no doctor treats the patient's disease.
std::pair<Channel, DoctorId> choose_channel_and_doctor(RngStream& stream, const PatientAgent& patient,
                                                       const ScenarioConfig& config,
                                                       std::span<const DoctorAgent> doctors, double pref_shift);

struct Appointment {
  SimTime time;
  std::uint64_t occurrence = 0;
  int slot = 0;
};

/// Taken appointment slots of one doctor, keyed by block occurrence.
class SlotBook {
public:
  bool taken(std::uint64_t occurrence, int slot) const;
  void take(std::uint64_t occurrence, int slot);
  void release(std::uint64_t occurrence, int slot);

private:
  std::unordered_map<std::uint64_t, std::uint32_t> used_;
};

/// Earliest free slot block_start + k·P (k < slots_per_session, slot time
/// not before now) in the next Clinic (in person) or Online block, scanning
/// forward block by block. Marks the slot as taken.
Appointment book_appointment(SlotBook& book, const WeeklySchedule& schedule, int slots_per_session, Channel channel,
                             double slot_minutes, SimTime now);

struct BedOutcome {
  BedDecision decision = BedDecision::WaitForEmptyBed;
  std::optional<SimTime> booked;  // WaitInHome only
};

/// Bed request after an accepted hospitalisation. Policy 0 (M for online
/// visits, N for in-person) admits at once when a bed is free and nobody is
/// queued, otherwise queues the patient (order set by O). Policy 1 books the
/// earliest projected free instant and sends the patient home until then.
/// Updates the section's waiting list or bed schedule; admission itself is
/// left to the caller.
BedOutcome enqueue_for_bed(SectionAgent& section, const BedRequest& request, Channel channel,
                           const ScenarioConfig& config, SimTime now);

struct ReplicationResult {
  ResponseVector responses;
  ReplicationTrace trace;
};

/// One replication. Pure function of (config, replication): streams are
/// keyed by config.master_seed and the replication index.
/// Throws ContractViolation when an agent receives a trigger its state-chart has no edge for.
ReplicationResult run_replication(const ScenarioConfig& config, std::uint64_t replication);

struct TraceCheck {
  bool ok = true;
  std::vector<std::string> problems;  // first few only
  long arrivals = 0;
  long recovered = 0;
  long dropouts = 0;
  long in_system = 0;
  long in_home_treatment = 0;
};

/// Replays a trace and checks state-chart edges, bed occupancy and
/// conservation, flow conservation and the bed-queue order for policy O.
TraceCheck validate_trace(const ReplicationTrace& trace, bool tourist_priority);

}  // namespace hospsim
