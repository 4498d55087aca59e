#include "hospsim/agents/specialty.hpp"

#include <stdexcept>

namespace hospsim {

namespace {

using enum Weekday;

constexpr double hm(int h, int m = 0) { return h * 60.0 + m; }

WeeklyBlock block(Activity a, WeekdaySet days, double start, double end) { return WeeklyBlock{a, days, start, end}; }

std::vector<WeeklyBlock> with_online(std::vector<WeeklyBlock> blocks) {
  blocks.push_back(block(Activity::Online, WeekdaySet::every_day(), hm(8), hm(10)));
  blocks.push_back(block(Activity::Online, WeekdaySet::every_day(), hm(20), hm(22)));
  return blocks;
}

std::array<SpecialtyProfile, kSpecialtyCount> build_profiles() {
  using T = Triangular;
  std::array<SpecialtyProfile, kSpecialtyCount> p;

  p[0] = {T::symmetric(10, 15), T::symmetric(15, 25), T::symmetric(15, 20), 5, 5,
          WeeklySchedule(with_online({
              block(Activity::Clinic, {Sat, Sun}, hm(10), hm(13)),
              block(Activity::Hospital, {Sat, Sun}, hm(13, 30), hm(14, 30)),
              block(Activity::Hospital, {Mon, Tue, Wed, Thu, Fri}, hm(13), hm(14)),
          }))};
  p[1] = {T::symmetric(10, 15), T::symmetric(10, 15), T::symmetric(10, 15), 3, 5,
          WeeklySchedule(with_online({
              block(Activity::Clinic, {Sat, Sun, Mon, Tue, Fri}, hm(10), hm(15)),
              block(Activity::Hospital, {Sat, Sun, Mon, Tue, Fri}, hm(15, 30), hm(17)),
              block(Activity::Hospital, {Wed, Thu}, hm(13), hm(14)),
          }))};
  p[2] = {T::symmetric(5, 7), T::symmetric(5, 10), T::symmetric(5, 10), 3, 5,
          WeeklySchedule(with_online({
              block(Activity::Clinic, {Sat, Sun, Wed}, hm(10), hm(14)),
              block(Activity::Hospital, {Sat, Sun, Wed}, hm(14, 30), hm(16)),
              block(Activity::Hospital, {Mon, Tue, Thu, Fri}, hm(13), hm(14)),
          }))};
  p[3] = {T::symmetric(5, 7), T::symmetric(10, 15), T::symmetric(20, 25), 5, 3,
          WeeklySchedule(with_online({
              block(Activity::Clinic, {Sat}, hm(10), hm(11)),
              block(Activity::Hospital, {Sat}, hm(12), hm(13, 30)),
              block(Activity::Hospital, {Sun, Mon, Tue, Wed, Thu, Fri}, hm(13), hm(14)),
          }))};
  p[4] = {T::symmetric(5, 10), T::symmetric(20, 25), T::symmetric(5, 10), 3, 4,
          WeeklySchedule(with_online({
              block(Activity::Clinic, {Sat, Sun, Wed, Thu, Fri}, hm(10), hm(16)),
              block(Activity::Hospital, {Sat, Sun, Wed, Thu, Fri}, hm(16, 30), hm(18, 30)),
              block(Activity::Hospital, {Mon, Tue}, hm(13), hm(14)),
          }))};
  return p;
}

}  // namespace

const SpecialtyProfile& specialty_profile(SpecialtyIndex s) {
  static const std::array<SpecialtyProfile, kSpecialtyCount> profiles = build_profiles();
  if (s >= kSpecialtyCount) throw std::out_of_range("specialty_profile: index out of range");
  return profiles[s];
}

}  // namespace hospsim
