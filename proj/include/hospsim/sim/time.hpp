#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

namespace hospsim {

inline constexpr double kMinutesPerHour = 60.0;
inline constexpr double kMinutesPerDay = 1440.0;
inline constexpr int kDaysPerWeek = 7;

/// Day-of-week index with day 0 of the simulation falling on Saturday.
enum class Weekday : std::uint8_t { Sat = 0, Sun, Mon, Tue, Wed, Thu, Fri };

/// Simulation clock value in minutes since the start of the run.
class SimTime {
public:
  constexpr SimTime() = default;
  constexpr explicit SimTime(double minutes) : minutes_(minutes) {}

  static constexpr SimTime from_days(double days) { return SimTime{days * kMinutesPerDay}; }
  static constexpr SimTime at(long day, int hour, int minute = 0) {
    return SimTime{static_cast<double>(day) * kMinutesPerDay + hour * kMinutesPerHour + minute};
  }

  constexpr double minutes() const { return minutes_; }
  constexpr double days() const { return minutes_ / kMinutesPerDay; }

  long day_index() const { return static_cast<long>(std::floor(minutes_ / kMinutesPerDay)); }
  Weekday weekday() const { return static_cast<Weekday>(day_index() % kDaysPerWeek); }
  double minute_of_day() const { return minutes_ - static_cast<double>(day_index()) * kMinutesPerDay; }

  constexpr SimTime operator+(double delta_minutes) const { return SimTime{minutes_ + delta_minutes}; }
  constexpr double operator-(SimTime other) const { return minutes_ - other.minutes_; }

  constexpr auto operator<=>(const SimTime&) const = default;

private:
  double minutes_ = 0.0;
};

}  // namespace hospsim
