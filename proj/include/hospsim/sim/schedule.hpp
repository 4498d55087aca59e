#pragma once

#include "hospsim/sim/time.hpp"

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace hospsim {

enum class Activity : std::uint8_t { Clinic, Hospital, Online };

std::string_view to_string(Activity a);

/// Set of weekdays as a 7-bit mask, bit i = Weekday(i).
class WeekdaySet {
public:
  constexpr WeekdaySet() = default;
  constexpr WeekdaySet(std::initializer_list<Weekday> days) {
    for (Weekday d : days) bits_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(d));
  }
  static constexpr WeekdaySet every_day() {
    WeekdaySet s;
    s.bits_ = 0x7f;
    return s;
  }
  constexpr bool contains(Weekday d) const { return (bits_ >> static_cast<unsigned>(d)) & 1u; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool intersects(WeekdaySet o) const { return (bits_ & o.bits_) != 0; }

private:
  std::uint8_t bits_ = 0;
};

struct WeeklyBlock {
  Activity activity = Activity::Clinic;
  WeekdaySet weekdays;
  double start_minute = 0.0;  // minutes after midnight
  double end_minute = 0.0;
};

/// One dated instance of a weekly block.
struct BlockOccurrence {
  Activity activity = Activity::Clinic;
  SimTime start;
  SimTime end;
  std::size_t block_index = 0;  // position in the schedule
  long day = 0;

  /// Stable identifier of this occurrence within a schedule.
  std::uint64_t id() const { return static_cast<std::uint64_t>(day) * 64u + block_index; }
};

/// Validated weekly timetable of one doctor.
class WeeklySchedule {
public:
  WeeklySchedule() = default;
  /// Throws std::invalid_argument when a block is empty or two blocks overlap on a shared weekday.
  explicit WeeklySchedule(std::vector<WeeklyBlock> blocks);

  std::span<const WeeklyBlock> blocks() const { return blocks_; }
  bool has(Activity a) const;

  /// Block occurrence in progress at `now` (start <= now < end), if any.
  std::optional<BlockOccurrence> block_at(SimTime now) const;

  /// Earliest occurrence of `activity` that is in progress at `now` or starts after it.
  std::optional<BlockOccurrence> next_occurrence(SimTime now, Activity activity) const;

  /// Earliest occurrence of any activity whose start is strictly after `now`.
  std::optional<BlockOccurrence> next_start_after(SimTime now) const;

  /// Total minutes of `activity` between two instants.
  double minutes_of(Activity activity, SimTime from, SimTime to) const;

private:
  std::vector<WeeklyBlock> blocks_;
};

/// Earliest time >= now at which a block of `activity` is running: the block
/// start, or `now` itself when a block is already in progress. Empty when the
/// schedule has no block of that activity.
std::optional<SimTime> next_block_start(const WeeklySchedule& schedule, SimTime now, Activity activity);

}  // namespace hospsim
