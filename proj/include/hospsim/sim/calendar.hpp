#pragma once

#include "hospsim/sim/time.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

namespace hospsim {

struct EventHandle {
  std::uint64_t seq = 0;
  friend bool operator==(EventHandle, EventHandle) = default;
};

template <typename Payload>
struct FiredEvent {
  SimTime time;
  std::uint64_t seq;
  Payload payload;
};

/// Future-event list ordered by (fire time, scheduling sequence).
///
/// Ties on fire time are delivered FIFO. Cancelled events are dropped lazily
/// when they reach the head of the heap. Popping never returns an event whose
/// fire time lies beyond the horizon; such events stay queued.
template <typename Payload>
class EventCalendar {
public:
  EventCalendar() = default;
  explicit EventCalendar(SimTime horizon) : horizon_(horizon) {}

  SimTime now() const { return now_; }
  SimTime horizon() const { return horizon_; }
  void set_horizon(SimTime h) { horizon_ = h; }

  EventHandle schedule(SimTime t, Payload payload) {
    if (t < now_) {
      throw std::invalid_argument("EventCalendar::schedule: fire time precedes current clock");
    }
    const std::uint64_t seq = ++last_seq_;
    heap_.push(Entry{t, seq, std::move(payload)});
    pending_.insert(seq);
    return EventHandle{seq};
  }

  /// Returns false when the handle was already delivered or cancelled.
  bool cancel(EventHandle h) { return pending_.erase(h.seq) > 0; }

  bool is_pending(EventHandle h) const { return pending_.contains(h.seq); }

  std::optional<FiredEvent<Payload>> pop_next() {
    while (!heap_.empty()) {
      const Entry& top = heap_.top();
      if (!pending_.contains(top.seq)) {
        heap_.pop();
        continue;
      }
      if (top.time > horizon_) return std::nullopt;
      FiredEvent<Payload> out{top.time, top.seq, std::move(const_cast<Entry&>(top).payload)};
      pending_.erase(out.seq);
      heap_.pop();
      now_ = out.time;
      return out;
    }
    return std::nullopt;
  }

  bool empty() const { return pending_.empty(); }
  std::size_t pending() const { return pending_.size(); }
  std::uint64_t last_seq() const { return last_seq_; }

private:
  struct Entry {
    SimTime time;
    std::uint64_t seq;
    Payload payload;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
  std::unordered_set<std::uint64_t> pending_;
  SimTime now_{};
  SimTime horizon_{std::numeric_limits<double>::infinity()};
  std::uint64_t last_seq_ = 0;
};

}  // namespace hospsim
