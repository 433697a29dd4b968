#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace vcsim {

// Deterministic discrete-event engine.
//
// Events fire in nondecreasing time order; events with equal timestamps fire
// in insertion order (a monotone sequence number breaks ties). Scheduling in
// the past throws.
class SimEngine {
 public:
  using Handler = std::function<void()>;

  double now() const { return now_; }
  std::size_t pending() const { return heap_.size(); }

  void schedule(double time, Handler fn) {
    if (time < now_)
      throw std::logic_error("schedule: event time precedes current time");
    heap_.push_back(Entry{time, next_seq_++, std::move(fn)});
    std::push_heap(heap_.begin(), heap_.end(), Later{});
  }

  // Convenience: schedule relative to the current time.
  void schedule_in(double dt, Handler fn) { schedule(now_ + dt, std::move(fn)); }

  // Processes every event with time <= t_end, then advances the clock to
  // t_end. Events scheduled by handlers are picked up in the same call.
  void run_until(double t_end) {
    if (t_end < now_)
      throw std::logic_error("run_until: target time precedes current time");
    while (!heap_.empty() && heap_.front().time <= t_end) {
      std::pop_heap(heap_.begin(), heap_.end(), Later{});
      Entry e = std::move(heap_.back());
      heap_.pop_back();
      now_ = e.time;
      e.fn();
    }
    now_ = t_end;
  }

  // Drains the queue completely (used by open-ended harnesses).
  void run_all() {
    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), Later{});
      Entry e = std::move(heap_.back());
      heap_.pop_back();
      now_ = e.time;
      e.fn();
    }
  }

 private:
  struct Entry {
    double time;
    std::uint64_t seq;
    Handler fn;
  };
  // Min-heap: "later" entries sink. Comparator is used as greater-than.
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  std::vector<Entry> heap_;
  double now_ = 0.0;
  std::uint64_t next_seq_ = 0;
};

}  // namespace vcsim
