#pragma once

#include <stdexcept>
#include <string>

#include "vcsim/config.hpp"

namespace vcsim {

// One wireless direction modeled as a shared FIFO server: frames are
// serialized in submission order at a fixed effective throughput plus a
// per-frame overhead that stands in for MAC/contention cost. The queue is
// unbounded; admission control lives at the compute nodes, not here.
//
// Four instances make up the wireless plant: ax_up / ax_down between users
// and the AP, p_up / p_down between the AP and vehicles. Beacons share p_up
// with task uploads.
class MediumModel {
 public:
  MediumModel(std::string name, double throughput_bps, double per_frame_overhead_s)
      : name_(std::move(name)),
        throughput_bps_(throughput_bps),
        overhead_s_(per_frame_overhead_s) {
    if (throughput_bps_ <= 0.0)
      throw std::invalid_argument("medium " + name_ + ": throughput must be > 0");
    if (overhead_s_ < 0.0)
      throw std::invalid_argument("medium " + name_ + ": overhead must be >= 0");
  }

  // Admits a frame at `now` and returns its delivery time. The transmission
  // starts when every previously admitted frame has finished, so delivery
  // order equals submission order and busy_until never decreases.
  double enqueue_frame(long bytes, double now) {
    if (bytes <= 0) throw std::invalid_argument("medium " + name_ + ": bytes must be > 0");
    if (now < 0.0) throw std::invalid_argument("medium " + name_ + ": now must be >= 0");
    double start = std::max(now, busy_until_);
    double delivered = start + path_time(bytes);
    busy_until_ = delivered;
    return delivered;
  }

  // Uncontended transmission time for a frame of this size; ignores the
  // queue state. Used as the analytic floor by oracles.
  double path_time(long bytes) const {
    if (bytes <= 0) throw std::invalid_argument("medium " + name_ + ": bytes must be > 0");
    return static_cast<double>(bytes) * 8.0 / throughput_bps_ + overhead_s_;
  }

  double busy_until() const { return busy_until_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  double throughput_bps_;
  double overhead_s_;
  double busy_until_ = 0.0;
};

// The AP <-> cloud segment is a constant one-way latency with no
// serialization term: the wired backhaul is never the bottleneck here.
inline double cn_delay(const SimConfig& cfg) { return cfg.cn_latency_s; }

}  // namespace vcsim
