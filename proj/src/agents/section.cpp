#include "hospsim/agents/section.hpp"

#include <algorithm>

namespace hospsim {

namespace {

bool before(const BedRequest& a, const BedRequest& b, bool tourist_priority) {
  if (tourist_priority && a.type != b.type) return a.type == PatientType::Tourist;
  if (a.request_time != b.request_time) return a.request_time < b.request_time;
  return a.seq < b.seq;
}

}  // namespace

void SectionAgent::enqueue(const BedRequest& r, bool tourist_priority) {
  auto pos = std::find_if(waiting_list.begin(), waiting_list.end(),
                          [&](const BedRequest& w) { return before(r, w, tourist_priority); });
  waiting_list.insert(pos, r);
}

bool SectionAgent::remove_waiting(PatientId p) {
  auto it = std::find_if(waiting_list.begin(), waiting_list.end(), [&](const BedRequest& w) { return w.patient == p; });
  if (it == waiting_list.end()) return false;
  waiting_list.erase(it);
  return true;
}

bool SectionAgent::remove_booking(PatientId p) {
  auto it = std::find_if(bed_schedule.begin(), bed_schedule.end(), [&](const BedBooking& b) { return b.patient == p; });
  if (it == bed_schedule.end()) return false;
  bed_schedule.erase(it);
  return true;
}

void SectionAgent::admit(PatientId p, SimTime planned_end) {
  if (occupied >= total_beds) {
    throw ContractViolation("section " + std::to_string(spec + 1) + ": admission of patient " + std::to_string(p) +
                            " with no free bed");
  }
  ++occupied;
  inpatients.emplace_back(p, planned_end);
}

void SectionAgent::release(PatientId p) {
  auto it = std::find_if(inpatients.begin(), inpatients.end(), [&](const auto& e) { return e.first == p; });
  if (it == inpatients.end()) {
    throw ContractViolation("section " + std::to_string(spec + 1) + ": patient " + std::to_string(p) +
                            " released without a bed");
  }
  inpatients.erase(it);
  --occupied;
}

SimTime SectionAgent::projected_free_time(SimTime now, double booking_hold_minutes) const {
  // Candidate instants are now and every projected release.
  std::vector<SimTime> candidates{now};
  for (const auto& [p, end] : inpatients) {
    if (end > now) candidates.push_back(end);
  }
  for (const auto& b : bed_schedule) candidates.push_back(std::max(now, b.booked + booking_hold_minutes));
  std::sort(candidates.begin(), candidates.end());

  for (SimTime t : candidates) {
    int busy = static_cast<int>(waiting_list.size());
    for (const auto& [p, end] : inpatients) {
      if (end > t) ++busy;
    }
    for (const auto& b : bed_schedule) {
      // A booking claims a bed until its projected release, including before it starts.
      if (t < b.booked + booking_hold_minutes) ++busy;
    }
    if (busy < total_beds) return t;
  }
  return candidates.back();
}

bool section_edge_allowed(SectionState from, SectionState to) {
  if (from == to) return true;
  return from == SectionState::NormalCapacity || to == SectionState::NormalCapacity;
}

std::optional<BedTransfer> capacity_rebalance(SpecialtyIndex requesting, std::span<SectionAgent> sections,
                                              int shortage_threshold) {
  SectionAgent& req = sections[requesting];
  if (!req.can_borrow() || req.state != SectionState::NormalCapacity) return std::nullopt;
  if (!req.need_capacity(shortage_threshold)) return std::nullopt;

  SectionAgent* lender = nullptr;
  for (SectionAgent& s : sections) {
    if (s.spec == requesting || !s.can_borrow() || s.state != SectionState::NormalCapacity) continue;
    if (!s.have_capacity() || !s.waiting_list.empty()) continue;
    if (lender == nullptr || s.free_beds() > lender->free_beds()) lender = &s;
  }
  if (lender == nullptr) return std::nullopt;
  const int n = lender->free_beds() / 2;
  if (n <= 0) return std::nullopt;

  lender->total_beds -= n;
  lender->how_many = n;
  lender->from_where = requesting;
  lender->state = SectionState::Borrow;
  req.total_beds += n;
  req.how_many = n;
  req.from_where = lender->spec;
  req.state = SectionState::TakeOthers;
  return BedTransfer{lender->spec, requesting, n};
}

std::optional<BedTransfer> return_beds(SpecialtyIndex borrower, std::span<SectionAgent> sections) {
  SectionAgent& b = sections[borrower];
  if (b.state != SectionState::TakeOthers || !b.from_where) return std::nullopt;
  SectionAgent& lender = sections[*b.from_where];
  if (!b.waiting_list.empty() && lender.waiting_list.empty()) return std::nullopt;
  const int n = std::min(b.free_beds(), b.how_many);
  if (n <= 0) return std::nullopt;

  b.total_beds -= n;
  b.how_many -= n;
  lender.total_beds += n;
  lender.how_many -= n;
  const BedTransfer moved{lender.spec, borrower, n};
  if (b.how_many == 0) {
    b.state = SectionState::NormalCapacity;
    b.from_where.reset();
    lender.state = SectionState::NormalCapacity;
    lender.from_where.reset();
  }
  return moved;
}

}  // namespace hospsim
