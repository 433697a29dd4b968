#pragma once

#include <map>
#include <vector>

#include "vcsim/compute.hpp"
#include "vcsim/rng.hpp"
#include "vcsim/task.hpp"

namespace vcsim {

// Controller-side view of one vehicle, refreshed by its beacons.
struct BeaconRecord {
  int vehicle_id = 0;
  double last_seen = 0.0;      // arrival time of the latest beacon
  bool reported_free = true;   // capacity state the vehicle reported at emission
};

// The list of vehicles the controller currently considers part of the
// vehicular cloud. Entries are upserted on each beacon and dropped once no
// beacon has arrived for longer than the staleness window; eviction is
// evaluated lazily at decision time, which is observationally equivalent to
// timer-driven cleanup.
class BeaconRegistry {
 public:
  void on_beacon(const BeaconRecord& r, double now) {
    auto& rec = records_[r.vehicle_id];
    rec.vehicle_id = r.vehicle_id;
    rec.last_seen = now;
    rec.reported_free = r.reported_free;
  }

  // Removes every record older than the staleness window. A record aged
  // exactly to the window survives; eviction needs a strictly older beacon.
  std::vector<int> evict_stale(double now, double staleness_s) {
    std::vector<int> removed;
    for (auto it = records_.begin(); it != records_.end();) {
      if (now - it->second.last_seen > staleness_s) {
        removed.push_back(it->first);
        it = records_.erase(it);
      } else {
        ++it;
      }
    }
    return removed;
  }

  // Ids of vehicles that reported spare capacity, in ascending id order so
  // that selection is reproducible.
  std::vector<int> free_vehicles() const {
    std::vector<int> ids;
    for (const auto& [id, rec] : records_) {
      if (rec.reported_free) ids.push_back(id);
    }
    return ids;
  }

  std::size_t size() const { return records_.size(); }
  bool contains(int vehicle_id) const { return records_.count(vehicle_id) > 0; }
  double max_staleness(double now) const {
    double worst = 0.0;
    for (const auto& [id, rec] : records_) worst = std::max(worst, now - rec.last_seen);
    return worst;
  }

 private:
  std::map<int, BeaconRecord> records_;
};

// Destination choice. ECFirst prefers the edge and spills to the cloud only
// when the edge queue is full; VCCFirst picks uniformly among vehicles whose
// latest beacon reported spare capacity and uses the cloud when that set is
// empty. The decision itself consumes no simulated time.
inline Destination decide(Strategy strategy, double now, BeaconRegistry& registry,
                          double staleness_s, const EdgeNode& edge, RngStream& selection_rng) {
  if (strategy == Strategy::ECFirst) {
    return edge.is_full() ? Destination::cloud() : Destination::edge();
  }
  registry.evict_stale(now, staleness_s);
  std::vector<int> free = registry.free_vehicles();
  if (free.empty()) return Destination::cloud();
  return Destination::vehicle(free[selection_rng.uniform_index(free.size())]);
}

}  // namespace vcsim
