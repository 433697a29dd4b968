#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vcsim/task.hpp"

namespace vcsim {

// Full configuration of one simulation run. Field names double as the keys
// of the flat key=value config file and as CLI flag names.
//
// Compute capacities and the task template follow the default parameter set
// of the modeled deployment; the wireless calibration values (throughputs,
// per-frame overhead, coverage radius) are effective single-queue
// abstractions of contended MACs and are documented in the README.
struct SimConfig {
  int n_users = 8;
  int n_vehicles = 50;
  double duration_s = 120.0;

  double c_cc_mips = 2356230.0;  // cloud capacity, infinite parallelism
  double c_ec_mips = 749070.0;   // edge capacity, single processor
  double c_vcc_mips = 71120.0;   // per-vehicle capacity, single processor

  double task_workload_mi = 500.0;
  int task_size_bytes = 4000;
  int result_size_bytes = 4000;

  int edge_queue_max = 100;    // total tasks held at the edge, in-service included
  int vehicle_queue_max = 1;   // waiting tasks buffered per vehicle beyond the one executing

  double cn_latency_s = 0.035;       // one-way AP <-> cloud latency
  double request_period_s = 0.200;   // per-user request cadence
  double beacon_hz = 10.0;
  double beacon_staleness_s = 0.500;
  int beacon_bytes = 300;            // CAM-like status frame

  double vehicle_speed_kmh = 13.1;
  double coverage_radius_m = 120.0;

  double ax_throughput_bps = 12e6;   // user <-> AP effective throughput
  double p_throughput_bps = 5.5e6;   // AP <-> vehicle effective throughput
  double per_frame_overhead_s = 0.0002;

  Strategy strategy = Strategy::VCCFirst;
  std::uint64_t seed = 1;

  bool retry_to_cloud = false;   // re-dispatch rejected vehicle placements to the cloud
  double warmup_s = 0.0;         // exclude records emitted before this time from latency stats
  bool poisson_arrivals = false; // replace the fixed cadence with Poisson arrivals

  double vehicle_speed_mps() const { return vehicle_speed_kmh / 3.6; }

  void validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
    if (n_users < 1) fail("n_users must be >= 1");
    if (n_vehicles < 0) fail("n_vehicles must be >= 0");
    if (duration_s <= 0.0) fail("duration_s must be > 0");
    if (c_cc_mips <= 0.0) fail("c_cc_mips must be > 0");
    if (c_ec_mips <= 0.0) fail("c_ec_mips must be > 0");
    if (c_vcc_mips <= 0.0) fail("c_vcc_mips must be > 0");
    if (task_workload_mi <= 0.0) fail("task_workload_mi must be > 0");
    if (task_size_bytes <= 0) fail("task_size_bytes must be > 0");
    if (result_size_bytes <= 0) fail("result_size_bytes must be > 0");
    if (edge_queue_max < 1) fail("edge_queue_max must be >= 1");
    if (vehicle_queue_max < 0) fail("vehicle_queue_max must be >= 0");
    if (cn_latency_s < 0.0) fail("cn_latency_s must be >= 0");
    if (request_period_s <= 0.0) fail("request_period_s must be > 0");
    if (beacon_hz <= 0.0) fail("beacon_hz must be > 0");
    if (beacon_staleness_s <= 0.0) fail("beacon_staleness_s must be > 0");
    if (beacon_bytes <= 0) fail("beacon_bytes must be > 0");
    if (vehicle_speed_kmh <= 0.0) fail("vehicle_speed_kmh must be > 0");
    if (coverage_radius_m <= 0.0) fail("coverage_radius_m must be > 0");
    if (ax_throughput_bps <= 0.0) fail("ax_throughput_bps must be > 0");
    if (p_throughput_bps <= 0.0) fail("p_throughput_bps must be > 0");
    if (per_frame_overhead_s < 0.0) fail("per_frame_overhead_s must be >= 0");
    if (warmup_s < 0.0) fail("warmup_s must be >= 0");
  }

  // Effective configuration as ordered key=value pairs; echoed into every
  // output file for provenance.
  std::vector<std::pair<std::string, std::string>> to_key_values() const {
    std::vector<std::pair<std::string, std::string>> kv;
    auto num = [](double v) {
      std::ostringstream os;
      os.precision(17);
      os << v;
      return os.str();
    };
    kv.emplace_back("n_users", std::to_string(n_users));
    kv.emplace_back("n_vehicles", std::to_string(n_vehicles));
    kv.emplace_back("duration_s", num(duration_s));
    kv.emplace_back("c_cc_mips", num(c_cc_mips));
    kv.emplace_back("c_ec_mips", num(c_ec_mips));
    kv.emplace_back("c_vcc_mips", num(c_vcc_mips));
    kv.emplace_back("task_workload_mi", num(task_workload_mi));
    kv.emplace_back("task_size_bytes", std::to_string(task_size_bytes));
    kv.emplace_back("result_size_bytes", std::to_string(result_size_bytes));
    kv.emplace_back("edge_queue_max", std::to_string(edge_queue_max));
    kv.emplace_back("vehicle_queue_max", std::to_string(vehicle_queue_max));
    kv.emplace_back("cn_latency_s", num(cn_latency_s));
    kv.emplace_back("request_period_s", num(request_period_s));
    kv.emplace_back("beacon_hz", num(beacon_hz));
    kv.emplace_back("beacon_staleness_s", num(beacon_staleness_s));
    kv.emplace_back("beacon_bytes", std::to_string(beacon_bytes));
    kv.emplace_back("vehicle_speed_kmh", num(vehicle_speed_kmh));
    kv.emplace_back("coverage_radius_m", num(coverage_radius_m));
    kv.emplace_back("ax_throughput_bps", num(ax_throughput_bps));
    kv.emplace_back("p_throughput_bps", num(p_throughput_bps));
    kv.emplace_back("per_frame_overhead_s", num(per_frame_overhead_s));
    kv.emplace_back("strategy", to_string(strategy));
    kv.emplace_back("seed", std::to_string(seed));
    kv.emplace_back("retry_to_cloud", retry_to_cloud ? "true" : "false");
    kv.emplace_back("warmup_s", num(warmup_s));
    kv.emplace_back("poisson_arrivals", poisson_arrivals ? "true" : "false");
    return kv;
  }

  // Assigns one field by key name. Throws on unknown keys or malformed values.
  void set(const std::string& key, const std::string& value) {
    auto as_int = [&](int lo) {
      std::size_t pos = 0;
      int v = std::stoi(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("config: bad integer for " + key);
      if (v < lo) throw std::invalid_argument("config: value too small for " + key);
      return v;
    };
    auto as_double = [&]() {
      std::size_t pos = 0;
      double v = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("config: bad number for " + key);
      return v;
    };
    auto as_bool = [&]() {
      if (value == "true" || value == "1") return true;
      if (value == "false" || value == "0") return false;
      throw std::invalid_argument("config: bad boolean for " + key);
    };

    if (key == "n_users") n_users = as_int(0);
    else if (key == "n_vehicles") n_vehicles = as_int(0);
    else if (key == "duration_s") duration_s = as_double();
    else if (key == "c_cc_mips") c_cc_mips = as_double();
    else if (key == "c_ec_mips") c_ec_mips = as_double();
    else if (key == "c_vcc_mips") c_vcc_mips = as_double();
    else if (key == "task_workload_mi") task_workload_mi = as_double();
    else if (key == "task_size_bytes") task_size_bytes = as_int(0);
    else if (key == "result_size_bytes") result_size_bytes = as_int(0);
    else if (key == "edge_queue_max") edge_queue_max = as_int(0);
    else if (key == "vehicle_queue_max") vehicle_queue_max = as_int(0);
    else if (key == "cn_latency_s") cn_latency_s = as_double();
    else if (key == "request_period_s") request_period_s = as_double();
    else if (key == "beacon_hz") beacon_hz = as_double();
    else if (key == "beacon_staleness_s") beacon_staleness_s = as_double();
    else if (key == "beacon_bytes") beacon_bytes = as_int(0);
    else if (key == "vehicle_speed_kmh") vehicle_speed_kmh = as_double();
    else if (key == "coverage_radius_m") coverage_radius_m = as_double();
    else if (key == "ax_throughput_bps") ax_throughput_bps = as_double();
    else if (key == "p_throughput_bps") p_throughput_bps = as_double();
    else if (key == "per_frame_overhead_s") per_frame_overhead_s = as_double();
    else if (key == "strategy") strategy = strategy_from_string(value);
    else if (key == "seed") {
      std::size_t pos = 0;
      seed = std::stoull(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("config: bad integer for seed");
    }
    else if (key == "retry_to_cloud") retry_to_cloud = as_bool();
    else if (key == "warmup_s") warmup_s = as_double();
    else if (key == "poisson_arrivals") poisson_arrivals = as_bool();
    else throw std::invalid_argument("config: unknown key: " + key);
  }

  // Flat key=value file; '#' starts a comment, blank lines are skipped.
  static SimConfig from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    SimConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::string s = trim(line);
      if (s.empty() || s[0] == '#') continue;
      auto eq = s.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("config: " + path + ":" + std::to_string(lineno) +
                                    ": expected key=value");
      cfg.set(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
    }
    return cfg;
  }

  static std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
  }
};

}  // namespace vcsim
