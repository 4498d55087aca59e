#pragma once

#include "hospsim/agents/types.hpp"
#include "hospsim/sim/distributions.hpp"
#include "hospsim/sim/schedule.hpp"

namespace hospsim {

/// Case data for one specialty: visit-time distributions in minutes, slots
/// reserved per session and the weekly timetable shared by its specialists.
struct SpecialtyProfile {
  Triangular online_visit;
  Triangular in_person_visit;
  Triangular file_review;
  int in_person_slots = 0;
  int online_slots = 0;
  WeeklySchedule schedule;

  const Triangular& visit_time(Channel c) const { return c == Channel::Online ? online_visit : in_person_visit; }
  int slots(Channel c) const { return c == Channel::Online ? online_slots : in_person_slots; }
};

const SpecialtyProfile& specialty_profile(SpecialtyIndex s);

}  // namespace hospsim
