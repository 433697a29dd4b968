#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vcsim/compute.hpp"
#include "vcsim/config.hpp"
#include "vcsim/controller.hpp"
#include "vcsim/event_queue.hpp"
#include "vcsim/medium.hpp"
#include "vcsim/metrics.hpp"
#include "vcsim/mobility.hpp"
#include "vcsim/rng.hpp"
#include "vcsim/task.hpp"
#include "vcsim/workload.hpp"

namespace vcsim {

// One seeded simulation run. Owns the event engine, the four wireless media,
// the compute tiers, the controller registry and the vehicle fleet, and
// drives every task through its full pipeline:
//
//   user --ax_up--> AP --[decision]--> cloud | edge | vehicle --...--> AP
//   --ax_down--> user
//
// Vehicle legs ride the p media (beacons share p_up with task uploads); the
// cloud leg is a fixed core-network latency each way; the edge is colocated
// with the AP, so its second legs cost nothing.
class Simulation {
 public:
  // Test seams: auto-scheduling of workload, beacons or the 1 Hz coverage
  // sampler can be disabled to drive the pipeline by hand.
  struct Options {
    bool schedule_workload = true;
    bool schedule_beacons = true;
    bool schedule_coverage_sampler = true;
  };

  explicit Simulation(const SimConfig& cfg) : Simulation(cfg, Options{}) {}

  Simulation(const SimConfig& cfg, Options opts)
      : cfg_(validated(cfg)),
        rng_(cfg.seed),
        net_(build_network(cfg)),
        ax_up_("ax_up", cfg.ax_throughput_bps, cfg.per_frame_overhead_s),
        ax_down_("ax_down", cfg.ax_throughput_bps, cfg.per_frame_overhead_s),
        p_up_("p_up", cfg.p_throughput_bps, cfg.per_frame_overhead_s),
        p_down_("p_down", cfg.p_throughput_bps, cfg.per_frame_overhead_s),
        cloud_(cfg.c_cc_mips),
        edge_(cfg.c_ec_mips, cfg.edge_queue_max),
        selection_(&rng_.create("vehicle-selection")) {
    vehicles_.reserve(static_cast<std::size_t>(cfg_.n_vehicles));
    for (int v = 0; v < cfg_.n_vehicles; ++v) {
      RngStream& mob = rng_.create("mobility/v" + std::to_string(v));
      vehicles_.push_back(VehicleSim{
          random_vehicle_state(v, cfg_.vehicle_speed_mps(), mob), 0.0,
          VehicleComputeNode(v, cfg_.c_vcc_mips, cfg_.vehicle_queue_max), &mob});
    }
    user_positions_.reserve(static_cast<std::size_t>(cfg_.n_users));
    for (int u = 0; u < cfg_.n_users; ++u) {
      RngStream& place = rng_.create("placement/u" + std::to_string(u));
      user_positions_.push_back(random_point_in_disk(net_.ap, cfg_.coverage_radius_m, place));
    }

    if (opts.schedule_workload) {
      for (const Task& t : generate_tasks(cfg_, rng_)) submit_task(t);
    }
    if (opts.schedule_beacons) {
      for (int v = 0; v < cfg_.n_vehicles; ++v) {
        // Beaconing predates the observation window: vehicles in coverage at
        // t = 0 are already listed, as they would be in a running system.
        if (in_coverage(vehicles_[static_cast<std::size_t>(v)].state.position(), net_.ap,
                        cfg_.coverage_radius_m)) {
          bool free = vehicles_[static_cast<std::size_t>(v)].node.can_accept();
          registry_.on_beacon(BeaconRecord{v, 0.0, free}, 0.0);
        }
        RngStream& phase = rng_.create("beacon-phase/v" + std::to_string(v));
        double first = phase.uniform(0.0, 1.0 / cfg_.beacon_hz);
        engine_.schedule(first, [this, v] { beacon_tick(v); });
      }
    }
    if (opts.schedule_coverage_sampler) {
      for (double t = 1.0; t <= cfg_.duration_s + 1e-9; t += 1.0) {
        engine_.schedule(t, [this] { sample_coverage(); });
      }
    }
  }

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  RunSummary run() {
    engine_.run_until(cfg_.duration_s);
    return summarize(log_, cfg_);
  }

  // Schedules one task's creation; the pipeline takes over from there.
  void submit_task(const Task& t) {
    t.validate();
    engine_.schedule(t.created_at, [this, t] { on_task_created(t); });
  }

  // Injects a controller registry entry directly (bypasses medium and
  // coverage); used to assemble uncontended single-task setups.
  void seed_beacon(int vehicle_id, double now, bool reported_free) {
    registry_.on_beacon(BeaconRecord{vehicle_id, now, reported_free}, now);
  }

  // Current vehicle position; queries must be issued in nondecreasing time
  // order, which holds for anything driven from event handlers.
  Vec2 vehicle_position(int vehicle_id, double t) {
    VehicleSim& v = vehicles_.at(static_cast<std::size_t>(vehicle_id));
    if (t < v.state_time)
      throw std::logic_error("vehicle_position: query time regressed");
    if (t > v.state_time) {
      v.state = advance(v.state, t - v.state_time, *v.mobility);
      v.state_time = t;
    }
    return v.state.position();
  }

  SimEngine& engine() { return engine_; }
  BeaconRegistry& registry() { return registry_; }
  const RunLog& log() const { return log_; }
  const SimConfig& config() const { return cfg_; }
  const RoadNetwork& network() const { return net_; }
  const std::vector<Vec2>& user_positions() const { return user_positions_; }

 private:
  struct VehicleSim {
    VehicleState state;
    double state_time;
    VehicleComputeNode node;
    RngStream* mobility;
  };

  static SimConfig validated(SimConfig cfg) {
    cfg.validate();
    return cfg;
  }

  // --- periodic machinery -------------------------------------------------

  void beacon_tick(int vehicle_id) {
    double now = engine_.now();
    Vec2 pos = vehicle_position(vehicle_id, now);
    if (in_coverage(pos, net_.ap, cfg_.coverage_radius_m)) {
      // Status sampled at emission; the registry sees it at frame delivery.
      bool free = vehicles_[static_cast<std::size_t>(vehicle_id)].node.can_accept();
      double delivered = p_up_.enqueue_frame(cfg_.beacon_bytes, now);
      engine_.schedule(delivered, [this, vehicle_id, free, delivered] {
        registry_.on_beacon(BeaconRecord{vehicle_id, delivered, free}, delivered);
      });
    }
    // Out-of-coverage beacons never reach the AP and cost it no airtime.
    engine_.schedule(now + 1.0 / cfg_.beacon_hz, [this, vehicle_id] { beacon_tick(vehicle_id); });
  }

  void sample_coverage() {
    double now = engine_.now();
    int count = 0;
    for (int v = 0; v < cfg_.n_vehicles; ++v) {
      if (in_coverage(vehicle_position(v, now), net_.ap, cfg_.coverage_radius_m)) ++count;
    }
    log_.coverage_samples.push_back(count);
  }

  // --- task pipeline -------------------------------------------------------

  void on_task_created(const Task& t) {
    ++log_.issued;
    OffloadRecord rec;
    rec.task_id = t.task_id;
    rec.t_request = t.created_at;
    double now = engine_.now();
    double delivered = ax_up_.enqueue_frame(t.input_size_bytes, now);
    rec.t_up_ap = delivered - now;
    engine_.schedule(delivered, [this, t, rec] { at_ap(t, rec); });
  }

  void at_ap(const Task& t, OffloadRecord rec) {
    double now = engine_.now();
    Destination dest =
        decide(cfg_.strategy, now, registry_, cfg_.beacon_staleness_s, edge_, *selection_);
    switch (dest.kind) {
      case Destination::Kind::Cloud:
        ++log_.decisions_cloud;
        start_cloud_leg(t, rec, now);
        break;
      case Destination::Kind::Edge:
        ++log_.decisions_edge;
        start_edge_leg(t, rec, now);
        break;
      case Destination::Kind::Vehicle:
        ++log_.decisions_vehicle;
        start_vehicle_leg(t, rec, dest.vehicle_id, now);
        break;
    }
  }

  void start_cloud_leg(const Task& t, OffloadRecord rec, double now) {
    rec.destination = Destination::cloud();
    // += keeps the wireless leg already paid when a rejected vehicle
    // placement is re-dispatched here.
    rec.t_up_leg2 += cfg_.cn_latency_s;
    rec.t_elab = t.workload_mi / cloud_.capacity_mips();
    rec.t_down_leg2 = cfg_.cn_latency_s;
    double arrival = now + cfg_.cn_latency_s;
    double back_at_ap = cloud_.submit(t, arrival) + cfg_.cn_latency_s;
    engine_.schedule(back_at_ap, [this, t, rec] { downlink_to_user(t, rec); });
  }

  void start_edge_leg(const Task& t, OffloadRecord rec, double now) {
    rec.destination = Destination::edge();
    auto grant = edge_.submit(t, now);
    if (!grant)
      throw std::logic_error("edge accepted at decision time but rejected at submit");
    rec.t_queue = grant->start - now;
    rec.t_elab = t.workload_mi / edge_.capacity_mips();
    engine_.schedule(grant->completion, [this, t, rec] {
      edge_.on_departure();
      downlink_to_user(t, rec);
    });
  }

  void start_vehicle_leg(const Task& t, OffloadRecord rec, int vehicle_id, double now) {
    rec.destination = Destination::vehicle(vehicle_id);
    double delivered = p_up_.enqueue_frame(t.input_size_bytes, now);
    rec.t_up_leg2 = delivered - now;
    engine_.schedule(delivered, [this, t, rec, vehicle_id] { at_vehicle(t, rec, vehicle_id); });
  }

  void at_vehicle(const Task& t, OffloadRecord rec, int vehicle_id) {
    double now = engine_.now();
    if (!in_coverage(vehicle_position(vehicle_id, now), net_.ap, cfg_.coverage_radius_m)) {
      fail(rec, Outcome::VehicleLeftCoverage);
      return;
    }
    auto& node = vehicles_[static_cast<std::size_t>(vehicle_id)].node;
    auto grant = node.submit(t, now);
    if (!grant) {
      // Stale beacon race: the vehicle filled up after reporting free.
      if (cfg_.retry_to_cloud) {
        start_cloud_leg(t, rec, now);
      } else {
        fail(rec, Outcome::VehicleRejected);
      }
      return;
    }
    rec.t_queue = grant->start - now;
    rec.t_elab = t.workload_mi / node.capacity_mips();
    engine_.schedule(grant->completion, [this, t, rec, vehicle_id] {
      vehicles_[static_cast<std::size_t>(vehicle_id)].node.on_departure();
      finish_vehicle_leg(t, rec, vehicle_id);
    });
  }

  void finish_vehicle_leg(const Task& t, OffloadRecord rec, int vehicle_id) {
    double now = engine_.now();
    // A vehicle that left coverage mid-execution finished the work but
    // cannot return the result.
    if (!in_coverage(vehicle_position(vehicle_id, now), net_.ap, cfg_.coverage_radius_m)) {
      fail(rec, Outcome::VehicleLeftCoverage);
      return;
    }
    double delivered = p_down_.enqueue_frame(t.result_size_bytes, now);
    rec.t_down_leg2 = delivered - now;
    engine_.schedule(delivered, [this, t, rec] { downlink_to_user(t, rec); });
  }

  void downlink_to_user(const Task& t, OffloadRecord rec) {
    double now = engine_.now();
    double delivered = ax_down_.enqueue_frame(t.result_size_bytes, now);
    rec.t_down_ap = delivered - now;
    engine_.schedule(delivered, [this, rec] {
      OffloadRecord done = rec;
      done.outcome = Outcome::Completed;
      done.total = engine_.now() - done.t_request;
      log_.add(done);
    });
  }

  void fail(OffloadRecord rec, Outcome why) {
    rec.outcome = why;
    rec.total.reset();
    log_.add(rec);
  }

  SimConfig cfg_;
  SimEngine engine_;
  RngSet rng_;
  RoadNetwork net_;
  MediumModel ax_up_;
  MediumModel ax_down_;
  MediumModel p_up_;
  MediumModel p_down_;
  CloudNode cloud_;
  EdgeNode edge_;
  std::vector<VehicleSim> vehicles_;
  std::vector<Vec2> user_positions_;
  BeaconRegistry registry_;
  RngStream* selection_;
  RunLog log_;
};

}  // namespace vcsim
