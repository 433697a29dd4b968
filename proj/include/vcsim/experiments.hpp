#pragma once

#include <future>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "vcsim/metrics.hpp"
#include "vcsim/simulation.hpp"

namespace vcsim {

// One complete seeded run.
inline RunSummary run_scenario(const SimConfig& cfg) {
  Simulation sim(cfg);
  return sim.run();
}

enum class SweepAxis { Users, Vehicles, VccMips, WorkloadMi, SpeedKmh };

inline std::string to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::Users: return "users";
    case SweepAxis::Vehicles: return "vehicles";
    case SweepAxis::VccMips: return "vcc_mips";
    case SweepAxis::WorkloadMi: return "workload_mi";
    case SweepAxis::SpeedKmh: return "speed_kmh";
  }
  return "?";
}

inline SweepAxis sweep_axis_from_string(const std::string& s) {
  if (s == "users") return SweepAxis::Users;
  if (s == "vehicles") return SweepAxis::Vehicles;
  if (s == "vcc_mips") return SweepAxis::VccMips;
  if (s == "workload_mi") return SweepAxis::WorkloadMi;
  if (s == "speed_kmh") return SweepAxis::SpeedKmh;
  throw std::invalid_argument("unknown sweep axis: " + s +
                              " (expected users|vehicles|vcc_mips|workload_mi|speed_kmh)");
}

inline SimConfig apply_axis(SimConfig cfg, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::Users: cfg.n_users = static_cast<int>(value); break;
    case SweepAxis::Vehicles: cfg.n_vehicles = static_cast<int>(value); break;
    case SweepAxis::VccMips: cfg.c_vcc_mips = value; break;
    case SweepAxis::WorkloadMi: cfg.task_workload_mi = value; break;
    case SweepAxis::SpeedKmh: cfg.vehicle_speed_kmh = value; break;
  }
  return cfg;
}

struct SweepRow {
  SweepAxis axis;
  double value = 0.0;
  int repeat = 0;
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::VCCFirst;
  RunSummary summary;
};

// Runs one row per (value, repeat); repeat r uses seed base.seed + r so that
// repeats are reproducible and distinct. Rows are independent and may run
// concurrently; the returned order is fixed by (value, repeat) regardless of
// completion order.
inline std::vector<SweepRow> sweep(SweepAxis axis, const std::vector<double>& values,
                                   const SimConfig& base, int repeats, unsigned jobs = 0) {
  if (values.empty()) throw std::invalid_argument("sweep: values must be nonempty");
  if (repeats < 1) throw std::invalid_argument("sweep: repeats must be >= 1");

  std::vector<SweepRow> rows;
  for (double v : values) {
    for (int r = 0; r < repeats; ++r) {
      SweepRow row;
      row.axis = axis;
      row.value = v;
      row.repeat = r;
      row.seed = base.seed + static_cast<std::uint64_t>(r);
      row.strategy = base.strategy;
      rows.push_back(row);
    }
  }

  if (jobs == 0) jobs = std::thread::hardware_concurrency();
  if (jobs == 0) jobs = 1;

  auto run_row = [&](SweepRow& row) {
    SimConfig cfg = apply_axis(base, axis, row.value);
    cfg.seed = row.seed;
    row.summary = run_scenario(cfg);
  };

  if (jobs <= 1 || rows.size() <= 1) {
    for (SweepRow& row : rows) run_row(row);
    return rows;
  }
  // Fixed-stride work split: row i belongs to worker i % jobs. Results land
  // in preallocated slots, so output order never depends on timing.
  std::vector<std::future<void>> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < rows.size(); i += jobs) run_row(rows[i]);
    }));
  }
  for (auto& f : workers) f.get();
  return rows;
}

// Sweep table: the base configuration is echoed as leading comments, then
// one row per run with the axis columns prepended to the summary columns.
inline void write_sweep_csv_with_echo(
    std::ostream& os, const std::vector<SweepRow>& rows,
    const std::vector<std::pair<std::string, std::string>>& config_echo) {
  for (const auto& [k, v] : config_echo) os << "# " << k << "=" << v << "\n";
  os << "axis,value,repeat,seed,strategy," << summary_csv_columns() << "\n";
  for (const SweepRow& row : rows) {
    os << to_string(row.axis) << ',' << fmt_double(row.value) << ',' << row.repeat << ','
       << row.seed << ',' << to_string(row.strategy) << ',' << summary_csv_row(row.summary)
       << '\n';
  }
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows,
                            const SimConfig& base) {
  write_sweep_csv_with_echo(os, rows, base.to_key_values());
}

}  // namespace vcsim
