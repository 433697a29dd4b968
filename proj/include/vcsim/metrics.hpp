#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "vcsim/config.hpp"
#include "vcsim/task.hpp"

namespace vcsim {

// Shortest round-trip representation; keeps emitted files byte-stable.
inline std::string fmt_double(double v) { return nlohmann::json(v).dump(); }

// Everything a run accumulates: finalized per-task records, decision
// counters and the 1 Hz vehicles-in-coverage samples. Tasks still in the
// pipeline when the run ends appear in `issued` only.
struct RunLog {
  std::vector<OffloadRecord> records;
  std::int64_t issued = 0;
  std::int64_t decisions_cloud = 0;
  std::int64_t decisions_edge = 0;
  std::int64_t decisions_vehicle = 0;
  std::vector<int> coverage_samples;

  void add(const OffloadRecord& r) {
    if (!seen_.insert(r.task_id).second)
      throw std::logic_error("run log: duplicate task_id " + std::to_string(r.task_id));
    records.push_back(r);
  }

 private:
  std::unordered_set<std::int64_t> seen_;
};

struct ComponentMeans {
  double t_up_ap = 0.0;
  double t_up_leg2 = 0.0;
  double t_queue = 0.0;
  double t_elab = 0.0;
  double t_down_leg2 = 0.0;
  double t_down_ap = 0.0;

  double sum() const {
    return t_up_ap + t_up_leg2 + t_queue + t_elab + t_down_leg2 + t_down_ap;
  }
  double wireless_sum() const { return t_up_ap + t_up_leg2_wireless + t_down_leg2_wireless + t_down_ap; }

  // Wireless-only second legs (zero when the second leg is the wired CN).
  double t_up_leg2_wireless = 0.0;
  double t_down_leg2_wireless = 0.0;
};

struct RunSummary {
  SimConfig config;

  std::int64_t issued = 0;
  std::int64_t completed = 0;
  std::int64_t failed = 0;
  std::int64_t in_flight = 0;
  std::int64_t failed_vehicle_left_coverage = 0;
  std::int64_t failed_vehicle_rejected = 0;

  std::int64_t decisions_total = 0;
  std::int64_t decisions_cloud = 0;
  std::int64_t decisions_edge = 0;
  std::int64_t decisions_vehicle = 0;

  std::int64_t dest_cloud = 0;    // finalized records per destination
  std::int64_t dest_edge = 0;
  std::int64_t dest_vehicle = 0;

  double cloud_fallback_fraction = 0.0;  // decisions_cloud / decisions_total
  double failure_rate = 0.0;             // failed / issued

  // Latency statistics over completed records emitted at or after warmup_s.
  std::optional<double> mean_total_s;
  std::optional<double> median_total_s;
  std::optional<double> p95_total_s;
  std::optional<ComponentMeans> component_means_s;
  std::optional<double> mean_vehicles_in_coverage;

  std::vector<double> completed_totals_sorted;  // basis for satisfaction fractions
};

// Fraction of completed tasks finishing within the class threshold;
// undefined (nullopt) when nothing completed.
inline std::optional<double> class_satisfaction(const RunSummary& s, const LatencyClass& cls) {
  if (s.completed_totals_sorted.empty()) return std::nullopt;
  auto it = std::upper_bound(s.completed_totals_sorted.begin(), s.completed_totals_sorted.end(),
                             cls.threshold_s);
  return static_cast<double>(it - s.completed_totals_sorted.begin()) /
         static_cast<double>(s.completed_totals_sorted.size());
}

inline RunSummary summarize(const RunLog& log, const SimConfig& cfg) {
  RunSummary s;
  s.config = cfg;
  s.issued = log.issued;
  s.decisions_cloud = log.decisions_cloud;
  s.decisions_edge = log.decisions_edge;
  s.decisions_vehicle = log.decisions_vehicle;
  s.decisions_total = log.decisions_cloud + log.decisions_edge + log.decisions_vehicle;

  ComponentMeans acc;
  std::vector<double> totals;
  for (const OffloadRecord& r : log.records) {
    switch (r.destination.kind) {
      case Destination::Kind::Cloud: ++s.dest_cloud; break;
      case Destination::Kind::Edge: ++s.dest_edge; break;
      case Destination::Kind::Vehicle: ++s.dest_vehicle; break;
    }
    if (r.outcome == Outcome::Completed) {
      ++s.completed;
      if (r.t_request >= cfg.warmup_s) {
        totals.push_back(*r.total);
        acc.t_up_ap += r.t_up_ap;
        acc.t_up_leg2 += r.t_up_leg2;
        acc.t_queue += r.t_queue;
        acc.t_elab += r.t_elab;
        acc.t_down_leg2 += r.t_down_leg2;
        acc.t_down_ap += r.t_down_ap;
        if (r.destination.kind == Destination::Kind::Vehicle) {
          acc.t_up_leg2_wireless += r.t_up_leg2;
          acc.t_down_leg2_wireless += r.t_down_leg2;
        }
      }
    } else {
      ++s.failed;
      if (r.outcome == Outcome::VehicleLeftCoverage) ++s.failed_vehicle_left_coverage;
      if (r.outcome == Outcome::VehicleRejected) ++s.failed_vehicle_rejected;
    }
  }
  s.in_flight = s.issued - s.completed - s.failed;

  if (s.decisions_total > 0)
    s.cloud_fallback_fraction =
        static_cast<double>(s.decisions_cloud) / static_cast<double>(s.decisions_total);
  if (s.issued > 0)
    s.failure_rate = static_cast<double>(s.failed) / static_cast<double>(s.issued);

  if (!totals.empty()) {
    const auto n = totals.size();
    double sum = 0.0;
    for (double t : totals) sum += t;
    std::sort(totals.begin(), totals.end());
    s.mean_total_s = sum / static_cast<double>(n);
    s.median_total_s = n % 2 == 1 ? totals[n / 2] : 0.5 * (totals[n / 2 - 1] + totals[n / 2]);
    auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
    s.p95_total_s = totals[rank == 0 ? 0 : rank - 1];
    ComponentMeans means = acc;
    means.t_up_ap /= static_cast<double>(n);
    means.t_up_leg2 /= static_cast<double>(n);
    means.t_queue /= static_cast<double>(n);
    means.t_elab /= static_cast<double>(n);
    means.t_down_leg2 /= static_cast<double>(n);
    means.t_down_ap /= static_cast<double>(n);
    means.t_up_leg2_wireless /= static_cast<double>(n);
    means.t_down_leg2_wireless /= static_cast<double>(n);
    s.component_means_s = means;
    s.completed_totals_sorted = std::move(totals);
  }

  if (!log.coverage_samples.empty()) {
    double sum = 0.0;
    for (int c : log.coverage_samples) sum += c;
    s.mean_vehicles_in_coverage = sum / static_cast<double>(log.coverage_samples.size());
  }
  return s;
}

// ---------------------------------------------------------------------------
// Serialization. Field names are part of the tool's interface.

inline nlohmann::json config_to_json(const SimConfig& cfg) {
  nlohmann::json j;
  j["n_users"] = cfg.n_users;
  j["n_vehicles"] = cfg.n_vehicles;
  j["duration_s"] = cfg.duration_s;
  j["c_cc_mips"] = cfg.c_cc_mips;
  j["c_ec_mips"] = cfg.c_ec_mips;
  j["c_vcc_mips"] = cfg.c_vcc_mips;
  j["task_workload_mi"] = cfg.task_workload_mi;
  j["task_size_bytes"] = cfg.task_size_bytes;
  j["result_size_bytes"] = cfg.result_size_bytes;
  j["edge_queue_max"] = cfg.edge_queue_max;
  j["vehicle_queue_max"] = cfg.vehicle_queue_max;
  j["cn_latency_s"] = cfg.cn_latency_s;
  j["request_period_s"] = cfg.request_period_s;
  j["beacon_hz"] = cfg.beacon_hz;
  j["beacon_staleness_s"] = cfg.beacon_staleness_s;
  j["beacon_bytes"] = cfg.beacon_bytes;
  j["vehicle_speed_kmh"] = cfg.vehicle_speed_kmh;
  j["coverage_radius_m"] = cfg.coverage_radius_m;
  j["ax_throughput_bps"] = cfg.ax_throughput_bps;
  j["p_throughput_bps"] = cfg.p_throughput_bps;
  j["per_frame_overhead_s"] = cfg.per_frame_overhead_s;
  j["strategy"] = to_string(cfg.strategy);
  j["seed"] = cfg.seed;
  j["retry_to_cloud"] = cfg.retry_to_cloud;
  j["warmup_s"] = cfg.warmup_s;
  j["poisson_arrivals"] = cfg.poisson_arrivals;
  return j;
}

inline nlohmann::json to_json(const RunSummary& s) {
  nlohmann::json j;
  j["config"] = config_to_json(s.config);
  j["counts"] = {
      {"issued", s.issued},
      {"completed", s.completed},
      {"failed", s.failed},
      {"in_flight", s.in_flight},
      {"failed_vehicle_left_coverage", s.failed_vehicle_left_coverage},
      {"failed_vehicle_rejected", s.failed_vehicle_rejected},
  };
  j["decisions"] = {
      {"total", s.decisions_total},
      {"cloud", s.decisions_cloud},
      {"edge", s.decisions_edge},
      {"vehicle", s.decisions_vehicle},
  };
  j["destinations"] = {
      {"cloud", s.dest_cloud},
      {"edge", s.dest_edge},
      {"vehicle", s.dest_vehicle},
  };
  j["cloud_fallback_fraction"] = s.cloud_fallback_fraction;
  j["failure_rate"] = s.failure_rate;

  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  j["total_time_s"] = {
      {"mean", opt(s.mean_total_s)},
      {"median", opt(s.median_total_s)},
      {"p95", opt(s.p95_total_s)},
  };
  if (s.component_means_s) {
    const ComponentMeans& m = *s.component_means_s;
    j["component_means_s"] = {
        {"t_up_ap", m.t_up_ap},       {"t_up_leg2", m.t_up_leg2},
        {"t_queue", m.t_queue},       {"t_elab", m.t_elab},
        {"t_down_leg2", m.t_down_leg2}, {"t_down_ap", m.t_down_ap},
    };
  } else {
    j["component_means_s"] = nullptr;
  }
  nlohmann::json sat;
  for (const LatencyClass& cls : latency_classes()) sat[cls.name] = opt(class_satisfaction(s, cls));
  j["class_satisfaction"] = sat;
  j["mean_vehicles_in_coverage"] = opt(s.mean_vehicles_in_coverage);
  return j;
}

inline const char* summary_csv_columns() {
  return "issued,completed,failed,in_flight,decisions_cloud,decisions_edge,decisions_vehicle,"
         "cloud_fallback_fraction,failure_rate,mean_total_s,median_total_s,p95_total_s,"
         "mean_t_up_ap_s,mean_t_up_leg2_s,mean_t_queue_s,mean_t_elab_s,mean_t_down_leg2_s,"
         "mean_t_down_ap_s,sat_ll_pp,sat_ll_p,sat_ll,mean_vehicles_in_coverage";
}

inline std::string summary_csv_row(const RunSummary& s) {
  auto opt = [](const std::optional<double>& v) { return v ? fmt_double(*v) : std::string(); };
  std::string row;
  row += std::to_string(s.issued) + ',' + std::to_string(s.completed) + ',' +
         std::to_string(s.failed) + ',' + std::to_string(s.in_flight) + ',';
  row += std::to_string(s.decisions_cloud) + ',' + std::to_string(s.decisions_edge) + ',' +
         std::to_string(s.decisions_vehicle) + ',';
  row += fmt_double(s.cloud_fallback_fraction) + ',' + fmt_double(s.failure_rate) + ',';
  row += opt(s.mean_total_s) + ',' + opt(s.median_total_s) + ',' + opt(s.p95_total_s) + ',';
  if (s.component_means_s) {
    const ComponentMeans& m = *s.component_means_s;
    row += fmt_double(m.t_up_ap) + ',' + fmt_double(m.t_up_leg2) + ',' + fmt_double(m.t_queue) +
           ',' + fmt_double(m.t_elab) + ',' + fmt_double(m.t_down_leg2) + ',' +
           fmt_double(m.t_down_ap) + ',';
  } else {
    row += ",,,,,,";
  }
  for (const LatencyClass& cls : latency_classes()) row += opt(class_satisfaction(s, cls)) + ',';
  row += opt(s.mean_vehicles_in_coverage);
  return row;
}

// Per-task record log, one row per finalized task.
inline void write_records_csv(std::ostream& os, const std::vector<OffloadRecord>& records,
                              Strategy strategy) {
  os << "task_id,strategy,destination,t_request,t_up_ap,t_up_leg2,t_queue,t_elab,"
        "t_down_leg2,t_down_ap,total,outcome\n";
  for (const OffloadRecord& r : records) {
    os << r.task_id << ',' << to_string(strategy) << ',' << r.destination.label() << ','
       << fmt_double(r.t_request) << ',' << fmt_double(r.t_up_ap) << ',' << fmt_double(r.t_up_leg2)
       << ',' << fmt_double(r.t_queue) << ',' << fmt_double(r.t_elab) << ','
       << fmt_double(r.t_down_leg2) << ',' << fmt_double(r.t_down_ap) << ','
       << (r.total ? fmt_double(*r.total) : std::string()) << ',' << to_string(r.outcome) << '\n';
  }
}

}  // namespace vcsim
