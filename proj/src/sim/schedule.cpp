#include "hospsim/sim/schedule.hpp"

#include <algorithm>
#include <stdexcept>

namespace hospsim {

std::string_view to_string(Activity a) {
  switch (a) {
    case Activity::Clinic: return "Clinic";
    case Activity::Hospital: return "Hospital";
    case Activity::Online: return "Online";
  }
  return "?";
}

WeeklySchedule::WeeklySchedule(std::vector<WeeklyBlock> blocks) : blocks_(std::move(blocks)) {
  for (const auto& b : blocks_) {
    if (!(b.start_minute < b.end_minute) || b.start_minute < 0.0 || b.end_minute > kMinutesPerDay) {
      throw std::invalid_argument("WeeklySchedule: block must satisfy 0 <= start < end <= 1440");
    }
    if (b.weekdays.empty()) throw std::invalid_argument("WeeklySchedule: block has no weekdays");
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks_.size(); ++j) {
      const auto& a = blocks_[i];
      const auto& b = blocks_[j];
      if (a.weekdays.intersects(b.weekdays) && a.start_minute < b.end_minute && b.start_minute < a.end_minute) {
        throw std::invalid_argument("WeeklySchedule: overlapping blocks on a shared weekday");
      }
    }
  }
}

bool WeeklySchedule::has(Activity a) const {
  return std::any_of(blocks_.begin(), blocks_.end(), [a](const WeeklyBlock& b) { return b.activity == a; });
}

namespace {

BlockOccurrence make_occurrence(const WeeklyBlock& b, std::size_t index, long day) {
  return BlockOccurrence{b.activity, SimTime::at(day, 0) + b.start_minute, SimTime::at(day, 0) + b.end_minute,
                         index, day};
}

Weekday weekday_of(long day) { return static_cast<Weekday>(day % kDaysPerWeek); }

}  // namespace

std::optional<BlockOccurrence> WeeklySchedule::block_at(SimTime now) const {
  const long day = now.day_index();
  const double m = now.minute_of_day();
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto& b = blocks_[i];
    if (b.weekdays.contains(weekday_of(day)) && b.start_minute <= m && m < b.end_minute) {
      return make_occurrence(b, i, day);
    }
  }
  return std::nullopt;
}

std::optional<BlockOccurrence> WeeklySchedule::next_occurrence(SimTime now, Activity activity) const {
  if (!has(activity)) return std::nullopt;
  const long today = now.day_index();
  const double m = now.minute_of_day();
  // Any weekly pattern repeats within 8 days of the query.
  for (long day = today; day <= today + kDaysPerWeek + 1; ++day) {
    std::optional<BlockOccurrence> best;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      const auto& b = blocks_[i];
      if (b.activity != activity || !b.weekdays.contains(weekday_of(day))) continue;
      if (day == today && b.end_minute <= m) continue;
      if (!best || b.start_minute < (best->start - SimTime::at(day, 0))) best = make_occurrence(b, i, day);
    }
    if (best) return best;
  }
  return std::nullopt;
}

std::optional<BlockOccurrence> WeeklySchedule::next_start_after(SimTime now) const {
  if (blocks_.empty()) return std::nullopt;
  const long today = now.day_index();
  for (long day = today; day <= today + kDaysPerWeek + 1; ++day) {
    std::optional<BlockOccurrence> best;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      const auto& b = blocks_[i];
      if (!b.weekdays.contains(weekday_of(day))) continue;
      const SimTime start = SimTime::at(day, 0) + b.start_minute;
      if (!(start > now)) continue;
      if (!best || start < best->start) best = make_occurrence(b, i, day);
    }
    if (best) return best;
  }
  return std::nullopt;
}

double WeeklySchedule::minutes_of(Activity activity, SimTime from, SimTime to) const {
  if (!(from < to)) return 0.0;
  double total = 0.0;
  for (long day = from.day_index(); day <= to.day_index(); ++day) {
    for (const auto& b : blocks_) {
      if (b.activity != activity || !b.weekdays.contains(weekday_of(day))) continue;
      const double s = std::max((SimTime::at(day, 0) + b.start_minute).minutes(), from.minutes());
      const double e = std::min((SimTime::at(day, 0) + b.end_minute).minutes(), to.minutes());
      if (e > s) total += e - s;
    }
  }
  return total;
}

std::optional<SimTime> next_block_start(const WeeklySchedule& schedule, SimTime now, Activity activity) {
  auto occ = schedule.next_occurrence(now, activity);
  if (!occ) return std::nullopt;
  return occ->start < now ? now : occ->start;
}

}  // namespace hospsim
