#pragma once

#include "hospsim/agents/patient.hpp"
#include "hospsim/agents/types.hpp"
#include "hospsim/sim/time.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace hospsim {

enum class SpanKind : std::uint8_t { Triage, VisitQueue, BedQueue };
enum class ExitKind : std::uint8_t { None, Recovered, Dropout };

struct WaitSpan {
  PatientId patient = 0;
  SpanKind kind = SpanKind::Triage;
  SimTime start;
  SimTime end;
  bool censored = false;  // still open at the end of the run
};

struct PatientRecord {
  PatientId id = 0;
  PatientType type = PatientType::Local;
  SpecialtyIndex disease = 0;
  SimTime arrival;
  ExitKind exit = ExitKind::None;
  SimTime exit_time;
  PatientState final_state = PatientState::NeedService;
};

struct EscalationRecord {
  PatientId patient = 0;
  SimTime time;
};

enum class BedEventKind : std::uint8_t { Join, Leave, Admit, Book };

struct BedEventRecord {
  SimTime time;
  BedEventKind kind = BedEventKind::Join;
  PatientId patient = 0;
  SpecialtyIndex section = 0;
  PatientType type = PatientType::Local;
  SimTime request_time;
  std::uint64_t seq = 0;
};

struct BedLevelRecord {
  SimTime time;
  std::array<int, kSpecialtyCount> occupied{};
  std::array<int, kSpecialtyCount> total{};
};

struct TransferRecord {
  SimTime time;
  SpecialtyIndex lender = 0;
  SpecialtyIndex borrower = 0;
  int beds = 0;
  bool returned = false;
};

struct PatientStep {
  SimTime time;
  PatientId patient = 0;
  PatientState from;
  PatientState to;
};

struct DoctorStep {
  SimTime time;
  DoctorId doctor = 0;
  DoctorState from;
  DoctorState to;
};

struct SectionStep {
  SimTime time;
  SpecialtyIndex section = 0;
  SectionState from;
  SectionState to;
};

/// Doctor time interval: a scheduled clinic/online block, or time spent working.
struct WorkInterval {
  DoctorId doctor = 0;
  SpecialtyIndex specialty = 0;
  SimTime start;
  SimTime end;
  bool scheduled = false;
};

struct ReplicationTrace {
  Mode mode = Mode::Hybrid;
  SimTime warmup;
  SimTime end;
  std::array<int, kSpecialtyCount> baseline_beds{};

  std::vector<PatientRecord> patients;
  std::vector<WaitSpan> spans;
  std::vector<EscalationRecord> escalations;
  std::vector<WorkInterval> work;

  std::vector<BedEventRecord> bed_events;
  std::vector<BedLevelRecord> bed_levels;
  std::vector<TransferRecord> transfers;
  std::vector<PatientStep> patient_steps;
  std::vector<DoctorStep> doctor_steps;
  std::vector<SectionStep> section_steps;

  std::uint64_t events_processed = 0;
  std::uint64_t adherence_steps = 0;
};

/// Writes the parts of a trace the response computation reads, with every
/// time stored as a hexadecimal float so a reload is bit-exact.
void write_trace(std::ostream& os, const ReplicationTrace& trace);
/// Throws std::runtime_error on malformed input.
ReplicationTrace read_trace(std::istream& is);

}  // namespace hospsim
