#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace vcsim {

// One offloadable unit of work: instruction count plus the request and
// result payload sizes that travel over the network.
struct Task {
  std::int64_t task_id = 0;
  int origin_user = 0;
  double workload_mi = 0.0;      // Million Instructions to execute
  int input_size_bytes = 0;      // request payload
  int result_size_bytes = 0;     // response payload
  double created_at = 0.0;       // simulated seconds

  void validate() const {
    if (workload_mi <= 0.0) throw std::invalid_argument("task: workload_mi must be > 0");
    if (input_size_bytes <= 0) throw std::invalid_argument("task: input_size_bytes must be > 0");
    if (result_size_bytes <= 0) throw std::invalid_argument("task: result_size_bytes must be > 0");
  }
};

// Application latency tiers used to grade end-to-end offloading times.
struct LatencyClass {
  std::string name;
  double threshold_s;
};

inline const std::array<LatencyClass, 3>& latency_classes() {
  static const std::array<LatencyClass, 3> classes = {{
      {"LL++", 0.016},
      {"LL+", 0.100},
      {"LL", 0.500},
  }};
  return classes;
}

enum class Strategy { ECFirst, VCCFirst };

inline std::string to_string(Strategy s) {
  return s == Strategy::ECFirst ? "ecfirst" : "vccfirst";
}

inline Strategy strategy_from_string(std::string v) {
  for (auto& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (v == "ecfirst") return Strategy::ECFirst;
  if (v == "vccfirst") return Strategy::VCCFirst;
  throw std::invalid_argument("unknown strategy: " + v + " (expected ecfirst|vccfirst)");
}

// Where a task was sent after the decision at the access point.
struct Destination {
  enum class Kind { Cloud, Edge, Vehicle };
  Kind kind = Kind::Cloud;
  int vehicle_id = -1;  // meaningful only for Kind::Vehicle

  static Destination cloud() { return {Kind::Cloud, -1}; }
  static Destination edge() { return {Kind::Edge, -1}; }
  static Destination vehicle(int id) { return {Kind::Vehicle, id}; }

  std::string label() const {
    switch (kind) {
      case Kind::Cloud: return "cloud";
      case Kind::Edge: return "edge";
      case Kind::Vehicle: return "vehicle:" + std::to_string(vehicle_id);
    }
    return "?";
  }
};

enum class Outcome {
  Completed,
  VehicleLeftCoverage,  // selected vehicle was outside coverage at a handoff
  VehicleRejected,      // stale-beacon race: vehicle was full on arrival
};

inline std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Completed: return "completed";
    case Outcome::VehicleLeftCoverage: return "vehicle_left_coverage";
    case Outcome::VehicleRejected: return "vehicle_rejected";
  }
  return "?";
}

// Per-task phase decomposition of the offloading time. For completed tasks
// the total equals the sum of the six components; components that a path
// does not traverse stay zero (e.g. t_up_leg2 for the edge, t_queue for the
// cloud).
struct OffloadRecord {
  std::int64_t task_id = 0;
  Destination destination;
  double t_request = 0.0;    // emission time of the request
  double t_up_ap = 0.0;      // user -> AP
  double t_up_leg2 = 0.0;    // AP -> cloud (CN) or AP -> vehicle (Wave)
  double t_queue = 0.0;      // wait before execution starts
  double t_elab = 0.0;       // execution
  double t_down_leg2 = 0.0;  // cloud -> AP or vehicle -> AP
  double t_down_ap = 0.0;    // AP -> user
  Outcome outcome = Outcome::Completed;
  std::optional<double> total;  // set iff completed

  double component_sum() const {
    return t_up_ap + t_up_leg2 + t_queue + t_elab + t_down_leg2 + t_down_ap;
  }
};

}  // namespace vcsim
