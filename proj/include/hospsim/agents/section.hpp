#pragma once

#include "hospsim/agents/patient.hpp"
#include "hospsim/agents/types.hpp"
#include "hospsim/sim/time.hpp"

#include <optional>
#include <span>
#include <vector>

namespace hospsim {

struct BedRequest {
  PatientId patient = 0;
  PatientType type = PatientType::Local;
  SimTime request_time;
  std::uint64_t seq = 0;  // tie-break for equal request times
};

struct BedBooking {
  PatientId patient = 0;
  SimTime booked;
  SimTime request_time;
};

/// Inpatient ward of one specialty.
struct SectionAgent {
  SpecialtyIndex spec = 0;
  int beds = 0;        // baseline
  int total_beds = 0;  // after lending / borrowing
  int occupied = 0;
  std::vector<BedBooking> bed_schedule;
  std::vector<BedRequest> waiting_list;
  /// Planned discharge times of current inpatients, used to project free beds.
  std::vector<std::pair<PatientId, SimTime>> inpatients;

  SectionState state = SectionState::NormalCapacity;
  std::optional<SpecialtyIndex> from_where;  // partner section while lending or borrowing
  int how_many = 0;                          // beds currently moved

  int free_beds() const { return total_beds - occupied; }
  bool need_capacity(int shortage_threshold) const {
    return static_cast<int>(waiting_list.size()) >= shortage_threshold && free_beds() <= 0;
  }
  bool have_capacity() const { return free_beds() * 2 > total_beds; }
  bool can_borrow() const { return spec != kCardiology; }

  /// Inserts into the waiting list. With tourist_priority, tourists go ahead
  /// of every local; within a class, and always when priority is off, the
  /// order is by request time.
  void enqueue(const BedRequest& r, bool tourist_priority);
  /// Removes the patient from the waiting list; false when absent.
  bool remove_waiting(PatientId p);
  bool remove_booking(PatientId p);

  void admit(PatientId p, SimTime planned_end);
  /// Frees the patient's bed; throws ContractViolation when the patient holds none.
  void release(PatientId p);

  /// Earliest instant >= now at which a bed is projected to be free, given
  /// planned discharges, queued patients and existing bookings (each booking
  /// is assumed to hold its bed for `booking_hold_minutes`).
  SimTime projected_free_time(SimTime now, double booking_hold_minutes) const;
};

struct BedTransfer {
  SpecialtyIndex lender = 0;
  SpecialtyIndex borrower = 0;
  int beds = 0;
};

/// Borrowing protocol. When `requesting` is short of beds, the compatible
/// section (cardiology excluded) in normal capacity with more than half of its
/// beds free and the most free beds lends floor(free/2) beds. Returns the
/// transfer, or nothing when no section qualifies.
std::optional<BedTransfer> capacity_rebalance(SpecialtyIndex requesting, std::span<SectionAgent> sections,
                                              int shortage_threshold);

/// Returns borrowed beds as they free up: a borrower gives back free beds
/// once its own waiting list is empty, or as soon as the lender has patients
/// waiting. States reset when everything is back. Returns the beds moved.
std::optional<BedTransfer> return_beds(SpecialtyIndex borrower, std::span<SectionAgent> sections);

bool section_edge_allowed(SectionState from, SectionState to);

}  // namespace hospsim
