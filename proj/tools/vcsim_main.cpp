// vcsim command line: scenario runs, parameter sweeps, the equipment-cost
// report and mobility trace export.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vcsim/cost.hpp"
#include "vcsim/experiments.hpp"
#include "vcsim/metrics.hpp"
#include "vcsim/mobility.hpp"
#include "vcsim/simulation.hpp"

namespace {

using vcsim::SimConfig;

// "1:30" -> 1..30 step 1, "0.5:2:0.5" -> 0.5,1,1.5,2, or a plain comma list.
std::vector<double> parse_values(const std::string& expr) {
  std::vector<double> out;
  if (expr.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(expr);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(std::stod(item));
    if (parts.size() < 2 || parts.size() > 3)
      throw std::invalid_argument("values: expected lo:hi or lo:hi:step");
    double lo = parts[0], hi = parts[1], step = parts.size() == 3 ? parts[2] : 1.0;
    if (step <= 0.0 || hi < lo) throw std::invalid_argument("values: bad range");
    for (double v = lo; v <= hi + 1e-9; v += step) out.push_back(v);
    return out;
  }
  std::stringstream ss(expr);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("values: empty list");
  return out;
}

// Relative output paths land in $VCSIM_OUT_DIR when it is set.
std::string resolve_out_path(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("VCSIM_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  std::string d(dir);
  if (d.back() != '/') d += '/';
  return d + path;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::string full = resolve_out_path(path);
  std::ofstream out(full);
  if (!out) throw std::runtime_error("cannot open output file: " + full);
  out << content;
  if (!out) throw std::runtime_error("failed writing output file: " + full);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_text_file(out_path, content);
  }
}

// Every config key is exposed as a flag of the same name; a handful carry
// short aliases used throughout the docs. Returns the keys actually set on
// the command line, which override config-file values.
struct ConfigFlags {
  std::map<std::string, std::string> values;

  void attach(CLI::App* cmd) {
    add(cmd, "n_users", "--n_users,--users", "number of end users");
    add(cmd, "n_vehicles", "--n_vehicles,--vehicles", "number of vehicles");
    add(cmd, "duration_s", "--duration_s,--duration", "simulated seconds");
    add(cmd, "c_cc_mips", "--c_cc_mips", "cloud capacity (MIPS)");
    add(cmd, "c_ec_mips", "--c_ec_mips", "edge capacity (MIPS)");
    add(cmd, "c_vcc_mips", "--c_vcc_mips", "per-vehicle capacity (MIPS)");
    add(cmd, "task_workload_mi", "--task_workload_mi,--workload-mi", "task workload (MI)");
    add(cmd, "task_size_bytes", "--task_size_bytes", "request payload (bytes)");
    add(cmd, "result_size_bytes", "--result_size_bytes", "result payload (bytes)");
    add(cmd, "edge_queue_max", "--edge_queue_max", "edge queue bound (tasks)");
    add(cmd, "vehicle_queue_max", "--vehicle_queue_max", "per-vehicle buffer depth");
    add(cmd, "cn_latency_s", "--cn_latency_s", "one-way core network latency (s)");
    add(cmd, "request_period_s", "--request_period_s", "per-user request period (s)");
    add(cmd, "beacon_hz", "--beacon_hz", "beacon frequency (Hz)");
    add(cmd, "beacon_staleness_s", "--beacon_staleness_s", "registry eviction window (s)");
    add(cmd, "beacon_bytes", "--beacon_bytes", "beacon frame size (bytes)");
    add(cmd, "vehicle_speed_kmh", "--vehicle_speed_kmh,--speed", "vehicle speed (km/h)");
    add(cmd, "coverage_radius_m", "--coverage_radius_m", "AP coverage radius (m)");
    add(cmd, "ax_throughput_bps", "--ax_throughput_bps", "user<->AP throughput (bit/s)");
    add(cmd, "p_throughput_bps", "--p_throughput_bps", "AP<->vehicle throughput (bit/s)");
    add(cmd, "per_frame_overhead_s", "--per_frame_overhead_s", "per-frame overhead (s)");
    add(cmd, "seed", "--seed", "master RNG seed");
    add(cmd, "retry_to_cloud", "--retry_to_cloud", "re-dispatch rejected placements (true/false)");
    add(cmd, "warmup_s", "--warmup_s", "exclude records emitted before this time (s)");
    add(cmd, "poisson_arrivals", "--poisson_arrivals", "Poisson arrivals instead of fixed cadence");
  }

  void apply(SimConfig& cfg) const {
    for (const auto& [key, value] : values) cfg.set(key, value);
  }

 private:
  void add(CLI::App* cmd, const std::string& key, const std::string& names,
           const std::string& desc) {
    cmd->add_option_function<std::string>(
        names, [this, key](const std::string& v) { values[key] = v; }, desc);
  }
};

int run_cli(int argc, char** argv) {
  CLI::App app{"vcsim: three-tier task offloading simulator (cloud / edge / vehicular cloud)"};
  app.require_subcommand(1);

  // --- scenario ---
  auto* scenario = app.add_subcommand("scenario", "run one seeded scenario, emit a JSON summary");
  std::string sc_config, sc_strategy, sc_out, sc_records, sc_csv;
  scenario->add_option("--config", sc_config, "key=value config file");
  scenario->add_option("--strategy", sc_strategy, "ecfirst|vccfirst");
  scenario->add_option("--out", sc_out, "summary JSON path (stdout if omitted)");
  scenario->add_option("--records", sc_records, "also write the per-task record CSV here");
  scenario->add_option("--csv", sc_csv, "also write the summary as a one-row CSV here");
  ConfigFlags sc_flags;
  sc_flags.attach(scenario);

  // --- sweep ---
  auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep, emit a CSV table");
  std::string sw_config, sw_axis, sw_values, sw_strategy = "vccfirst", sw_out;
  int sw_repeats = 1;
  unsigned sw_jobs = 0;
  sweep_cmd->add_option("--config", sw_config, "key=value config file");
  sweep_cmd->add_option("--axis", sw_axis, "users|vehicles|vcc_mips|workload_mi|speed_kmh")
      ->required();
  sweep_cmd->add_option("--values", sw_values, "lo:hi[:step] or comma list")->required();
  sweep_cmd->add_option("--strategy", sw_strategy, "ecfirst|vccfirst|both");
  sweep_cmd->add_option("--repeats", sw_repeats, "seeded repeats per value");
  sweep_cmd->add_option("--jobs", sw_jobs, "parallel runs (0 = hardware threads)");
  sweep_cmd->add_option("--out", sw_out, "CSV path (stdout if omitted)");
  ConfigFlags sw_flags;
  sw_flags.attach(sweep_cmd);

  // --- cost ---
  auto* cost_cmd = app.add_subcommand("cost", "pay-per-request vs edge capex break-even report");
  double c_price = 2e-5, c_rate = 40.0, c_capex = 1000.0;
  std::optional<double> c_horizon;
  bool c_json = false;
  std::string c_out;
  cost_cmd->add_option("--price", c_price, "USD per offloaded request");
  cost_cmd->add_option("--rate", c_rate, "requests per second");
  cost_cmd->add_option("--capex", c_capex, "edge equipment cost (USD)");
  cost_cmd->add_option("--horizon", c_horizon, "also report spend over this many seconds");
  cost_cmd->add_flag("--json", c_json, "emit JSON instead of text");
  cost_cmd->add_option("--out", c_out, "output path (stdout if omitted)");

  // --- trace ---
  auto* trace_cmd = app.add_subcommand("trace", "export a mobility trace CSV");
  std::string tr_config, tr_out;
  double tr_hz = 1.0;
  trace_cmd->add_option("--config", tr_config, "key=value config file");
  trace_cmd->add_option("--sample-hz", tr_hz, "samples per simulated second");
  trace_cmd->add_option("--out", tr_out, "CSV path (stdout if omitted)");
  ConfigFlags tr_flags;
  tr_flags.attach(trace_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (scenario->parsed()) {
    SimConfig cfg = sc_config.empty() ? SimConfig{} : SimConfig::from_file(sc_config);
    sc_flags.apply(cfg);
    if (!sc_strategy.empty()) cfg.strategy = vcsim::strategy_from_string(sc_strategy);
    cfg.validate();
    vcsim::Simulation sim(cfg);
    vcsim::RunSummary summary = sim.run();
    emit(sc_out, vcsim::to_json(summary).dump(2) + "\n");
    if (!sc_records.empty()) {
      std::ostringstream os;
      vcsim::write_records_csv(os, sim.log().records, cfg.strategy);
      write_text_file(sc_records, os.str());
    }
    if (!sc_csv.empty()) {
      std::string csv = std::string(vcsim::summary_csv_columns()) + "\n" +
                        vcsim::summary_csv_row(summary) + "\n";
      write_text_file(sc_csv, csv);
    }
    return 0;
  }

  if (sweep_cmd->parsed()) {
    SimConfig base = sw_config.empty() ? SimConfig{} : SimConfig::from_file(sw_config);
    sw_flags.apply(base);
    vcsim::SweepAxis axis = vcsim::sweep_axis_from_string(sw_axis);
    std::vector<double> values = parse_values(sw_values);

    std::vector<vcsim::Strategy> strategies;
    if (sw_strategy == "both") {
      strategies = {vcsim::Strategy::ECFirst, vcsim::Strategy::VCCFirst};
    } else {
      strategies = {vcsim::strategy_from_string(sw_strategy)};
    }

    std::vector<vcsim::SweepRow> rows;
    for (vcsim::Strategy st : strategies) {
      SimConfig cfg = base;
      cfg.strategy = st;
      cfg.validate();
      auto part = vcsim::sweep(axis, values, cfg, sw_repeats, sw_jobs);
      rows.insert(rows.end(), part.begin(), part.end());
    }

    std::ostringstream os;
    auto echo = base.to_key_values();
    if (sw_strategy == "both") {
      for (auto& [k, v] : echo) {
        if (k == "strategy") v = "both";
      }
    }
    vcsim::write_sweep_csv_with_echo(os, rows, echo);
    emit(sw_out, os.str());
    return 0;
  }

  if (cost_cmd->parsed()) {
    vcsim::CostInputs in{c_price, c_rate, c_capex};
    in.validate();
    auto be_s = vcsim::breakeven_time_s(in);
    auto be_req = vcsim::breakeven_requests(in);
    std::ostringstream os;
    if (c_json) {
      nlohmann::json j;
      j["inputs"] = {{"price_per_request_usd", in.price_per_request_usd},
                     {"request_rate_per_s", in.request_rate_per_s},
                     {"edge_capex_usd", in.edge_capex_usd}};
      if (c_horizon) {
        j["horizon_s"] = *c_horizon;
        j["spend_usd"] = vcsim::vcc_spend(in, *c_horizon);
      }
      j["breakeven"] = {
          {"requests", be_req ? nlohmann::json(*be_req) : nlohmann::json(nullptr)},
          {"seconds", be_s ? nlohmann::json(*be_s) : nlohmann::json(nullptr)},
          {"days", be_s ? nlohmann::json(*be_s / 86400.0) : nlohmann::json(nullptr)},
          {"years", be_s ? nlohmann::json(*be_s / (86400.0 * 365.25)) : nlohmann::json(nullptr)},
      };
      os << j.dump(2) << "\n";
    } else {
      os << "price per request : $" << vcsim::fmt_double(in.price_per_request_usd) << "\n";
      os << "request rate      : " << vcsim::fmt_double(in.request_rate_per_s) << " req/s\n";
      os << "edge capex        : $" << vcsim::fmt_double(in.edge_capex_usd) << "\n";
      if (c_horizon) {
        os << "spend over " << vcsim::fmt_double(*c_horizon)
           << " s : $" << vcsim::fmt_double(vcsim::vcc_spend(in, *c_horizon)) << "\n";
      }
      if (be_s) {
        os << "break-even        : " << vcsim::fmt_double(*be_req) << " requests, "
           << vcsim::fmt_double(*be_s) << " s (" << vcsim::fmt_double(*be_s / 86400.0)
           << " days, " << vcsim::fmt_double(*be_s / (86400.0 * 365.25)) << " years)\n";
      } else {
        os << "break-even        : never (no per-request spend)\n";
      }
    }
    emit(c_out, os.str());
    return 0;
  }

  if (trace_cmd->parsed()) {
    SimConfig cfg = tr_config.empty() ? SimConfig{} : SimConfig::from_file(tr_config);
    tr_flags.apply(cfg);
    cfg.validate();
    if (tr_hz <= 0.0) throw std::invalid_argument("trace: sample-hz must be > 0");

    vcsim::RngSet rng(cfg.seed);
    vcsim::RoadNetwork net = vcsim::build_network(cfg);
    std::vector<vcsim::VehicleState> states;
    std::vector<vcsim::RngStream*> streams;
    for (int v = 0; v < cfg.n_vehicles; ++v) {
      vcsim::RngStream& mob = rng.create("mobility/v" + std::to_string(v));
      states.push_back(vcsim::random_vehicle_state(v, cfg.vehicle_speed_mps(), mob));
      streams.push_back(&mob);
    }
    std::ostringstream os;
    os << "time_s,vehicle_id,x_m,y_m\n";
    double dt = 1.0 / tr_hz;
    for (double t = 0.0; t <= cfg.duration_s + 1e-9; t += dt) {
      for (int v = 0; v < cfg.n_vehicles; ++v) {
        if (t > 0.0) states[v] = vcsim::advance(states[v], dt, *streams[v]);
        vcsim::Vec2 p = states[v].position();
        os << vcsim::fmt_double(t) << ',' << v << ',' << vcsim::fmt_double(p.x) << ','
           << vcsim::fmt_double(p.y) << '\n';
      }
    }
    emit(tr_out, os.str());
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
