#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "vcsim/task.hpp"

namespace vcsim {

// Service interval granted to one task by a single-processor FIFO node.
struct ServiceGrant {
  double start = 0.0;       // execution begins (>= submission time)
  double completion = 0.0;  // start + workload / capacity
};

// Cloud tier: effectively infinite parallelism, so submissions never
// interact and there is no queueing term.
class CloudNode {
 public:
  explicit CloudNode(double capacity_mips) : capacity_(capacity_mips) {
    if (capacity_ <= 0.0) throw std::invalid_argument("cloud: capacity must be > 0");
  }

  double submit(const Task& t, double now) const {
    return now + t.workload_mi / capacity_;
  }

  double capacity_mips() const { return capacity_; }

 private:
  double capacity_;
};

// Edge tier: one processor behind a bounded FIFO. The bound counts every
// task held by the node, the one in service included; a submission that
// finds the node at the bound is turned away.
class EdgeNode {
 public:
  EdgeNode(double capacity_mips, int queue_max)
      : capacity_(capacity_mips), queue_max_(queue_max) {
    if (capacity_ <= 0.0) throw std::invalid_argument("edge: capacity must be > 0");
    if (queue_max_ < 1) throw std::invalid_argument("edge: queue_max must be >= 1");
  }

  bool is_full() const { return held_ >= queue_max_; }
  int held() const { return held_; }

  // nullopt means the queue is full. The caller must invoke on_departure()
  // at the granted completion time to release the slot.
  std::optional<ServiceGrant> submit(const Task& t, double now) {
    if (is_full()) return std::nullopt;
    double start = std::max(now, busy_until_);
    double completion = start + t.workload_mi / capacity_;
    busy_until_ = completion;
    ++held_;
    return ServiceGrant{start, completion};
  }

  void on_departure() {
    if (held_ <= 0) throw std::logic_error("edge: departure with no task held");
    --held_;
  }

  double capacity_mips() const { return capacity_; }

 private:
  double capacity_;
  int queue_max_;
  int held_ = 0;
  double busy_until_ = 0.0;
};

// One vehicle's processor: single server plus a small buffer that absorbs
// stale-beacon races. queue_max counts the waiting slots beyond the task in
// execution, so queue_max = 0 rejects whenever the vehicle is busy and the
// default of 1 holds one executing plus one waiting task.
class VehicleComputeNode {
 public:
  VehicleComputeNode(int vehicle_id, double capacity_mips, int queue_max)
      : vehicle_id_(vehicle_id), capacity_(capacity_mips), queue_max_(queue_max) {
    if (capacity_ <= 0.0) throw std::invalid_argument("vehicle: capacity must be > 0");
    if (queue_max_ < 0) throw std::invalid_argument("vehicle: queue_max must be >= 0");
  }

  int vehicle_id() const { return vehicle_id_; }
  int held() const { return held_; }

  // True while the vehicle would accept another task; this is the state a
  // beacon reports.
  bool can_accept() const { return held_ <= queue_max_; }

  std::optional<ServiceGrant> submit(const Task& t, double now) {
    if (!can_accept()) return std::nullopt;
    double start = std::max(now, busy_until_);
    double completion = start + t.workload_mi / capacity_;
    busy_until_ = completion;
    ++held_;
    return ServiceGrant{start, completion};
  }

  void on_departure() {
    if (held_ <= 0) throw std::logic_error("vehicle: departure with no task held");
    --held_;
  }

  double capacity_mips() const { return capacity_; }

 private:
  int vehicle_id_;
  double capacity_;
  int queue_max_;
  int held_ = 0;
  double busy_until_ = 0.0;
};

}  // namespace vcsim
