// oscinfo: deterministic CSV runs for the coupled-oscillator and ion-transport
// models. Subcommands: depth-sweep, quench, transport, sync-sweep.
//
// Config precedence: command-line flags > --config JSON file > defaults.

#include "oscinfo/run.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using nlohmann::json;

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config file '" + path + "': " + e.what());
  }
}

double json_double(const json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    try {
      std::size_t pos = 0;
      const double x = std::stod(s, &pos);
      if (pos == s.size()) return x;
    } catch (...) {
    }
  }
  throw std::runtime_error("config: '" + key + "' must be a number");
}

// Fill `var` from the JSON config unless the flag was given on the command
// line. Returns true if either source set it.
bool merge(const json& cfg, const CLI::App* cmd, const std::string& flag,
           const std::string& key, double& var) {
  if (cmd->count(flag) > 0) return true;
  if (cfg.contains(key)) {
    var = json_double(cfg, key);
    return true;
  }
  return false;
}

bool merge(const json& cfg, const CLI::App* cmd, const std::string& flag,
           const std::string& key, std::string& var) {
  if (cmd->count(flag) > 0) return true;
  if (cfg.contains(key)) {
    if (!cfg.at(key).is_string())
      throw std::runtime_error("config: '" + key + "' must be a string");
    var = cfg.at(key).get<std::string>();
    return true;
  }
  return false;
}

void write_output(const std::string& path, const std::string& csv) {
  if (path.empty() || path == "-") {
    std::cout << csv;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << csv;
  out.flush();
  if (!out) throw std::runtime_error("failed writing output file '" + path + "'");
}

struct CommonFlags {
  std::string config_path;
  std::string output;
  std::string grid;
  double theta = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file (flags override it)");
    cmd->add_option("-o,--output", output, "output file (default: stdout)");
    cmd->add_option("--grid", grid, "grid as start:stop:count");
    cmd->add_option("--theta", theta, "fixed mixing angle (default: decoupling angle)");
  }

  json config(const CLI::App* cmd) const {
    return cmd->count("--config") > 0 ? load_config(config_path) : json::object();
  }
};

int run_depth_sweep(const CLI::App* cmd, const CommonFlags& common,
                    const std::string& sweep_name, oscinfo::DepthSweepConfig cfg) {
  const json j = common.config(cmd);
  std::string sweep = sweep_name;
  merge(j, cmd, "--sweep", "sweep", sweep);
  cfg.sweep = oscinfo::parse_sweep_variable(sweep);

  // Figure defaults that depend on the sweep choice apply only to fields the
  // user left untouched.
  const bool omega2_set = merge(j, cmd, "--omega2", "omega2", cfg.omega2);
  const bool omega_c_set = merge(j, cmd, "--omega-c", "omega_c", cfg.omega_c);
  const bool g_set = merge(j, cmd, "--g", "g", cfg.g);
  bool grid_set = cmd->count("--grid") > 0 || j.contains("grid");
  switch (cfg.sweep) {
    case oscinfo::SweepVariable::coupling:
      if (!g_set) cfg.g = 0.0;  // swept anyway
      if (!grid_set) cfg.grid = {0.0, 2.0, 201};
      break;
    case oscinfo::SweepVariable::field:
      if (!g_set) cfg.g = 0.5;
      if (!grid_set) cfg.grid = {0.0, 10.0, 201};
      break;
    case oscinfo::SweepVariable::detuning:
      if (!g_set) cfg.g = 0.5;
      if (!omega_c_set) cfg.omega_c = 1.0;
      if (!omega2_set) cfg.omega2 = 1.0;
      if (!grid_set) cfg.grid = {0.0, 5.0, 201};
      break;
  }
  merge(j, cmd, "--omega1", "omega1", cfg.omega1);
  merge(j, cmd, "--omega-r", "omega_r", cfg.omega_r);
  if (cmd->count("--theta") > 0) {
    cfg.theta_auto = false;
    cfg.theta = common.theta;
  } else if (j.contains("theta")) {
    cfg.theta_auto = false;
    cfg.theta = json_double(j, "theta");
  }
  std::string grid_text = common.grid;
  if (merge(j, cmd, "--grid", "grid", grid_text))
    cfg.grid = oscinfo::parse_grid_spec(grid_text);
  std::string output = common.output;
  merge(j, cmd, "--output", "output", output);
  write_output(output, oscinfo::depth_sweep_csv(cfg));
  return 0;
}

int run_quench(const CLI::App* cmd, const CommonFlags& common,
               oscinfo::QuenchRunConfig cfg) {
  const json j = common.config(cmd);
  merge(j, cmd, "--omega-i1", "omega_i1", cfg.quench.omega_i1);
  merge(j, cmd, "--omega-i2", "omega_i2", cfg.quench.omega_i2);
  merge(j, cmd, "--omega1", "omega_f1", cfg.quench.omega_f1);
  merge(j, cmd, "--omega2", "omega_f2", cfg.quench.omega_f2);
  merge(j, cmd, "--g", "g", cfg.quench.g_f);
  merge(j, cmd, "--omega-c", "omega_c", cfg.quench.omega_c);
  merge(j, cmd, "--omega-r", "omega_r", cfg.omega_r);
  if (cmd->count("--theta") > 0) {
    cfg.theta_auto = false;
    cfg.theta = common.theta;
  } else if (j.contains("theta")) {
    cfg.theta_auto = false;
    cfg.theta = json_double(j, "theta");
  }
  std::string grid_text = common.grid;
  if (merge(j, cmd, "--grid", "grid", grid_text))
    cfg.grid = oscinfo::parse_grid_spec(grid_text);
  std::string output = common.output;
  merge(j, cmd, "--output", "output", output);
  write_output(output, oscinfo::quench_csv(cfg));
  return 0;
}

int run_transport(const CLI::App* cmd, const CommonFlags& common,
                  const std::string& protocol_name, oscinfo::TransportRunConfig cfg) {
  const json j = common.config(cmd);
  std::string protocol = protocol_name;
  merge(j, cmd, "--protocol", "protocol", protocol);
  cfg.selection = oscinfo::parse_protocol_selection(protocol);
  merge(j, cmd, "--mass", "mass", cfg.params.mass);
  merge(j, cmd, "--omega", "omega", cfg.params.omega);
  merge(j, cmd, "--beta", "beta", cfg.params.beta);
  merge(j, cmd, "--d0", "d0", cfg.d0);
  merge(j, cmd, "--length", "length", cfg.length);
  merge(j, cmd, "--duration", "duration", cfg.duration);
  merge(j, cmd, "--table", "table", cfg.table_path);
  std::string grid_text = common.grid;
  if (merge(j, cmd, "--grid", "grid", grid_text))
    cfg.grid = oscinfo::parse_grid_spec(grid_text);
  std::string output = common.output;
  merge(j, cmd, "--output", "output", output);
  write_output(output, oscinfo::transport_csv(cfg));
  return 0;
}

int run_sync_sweep(const CLI::App* cmd, const CommonFlags& common,
                   oscinfo::SyncSweepConfig cfg) {
  const json j = common.config(cmd);
  merge(j, cmd, "--omega1", "omega1", cfg.omega1);
  merge(j, cmd, "--g", "g", cfg.g);
  merge(j, cmd, "--omega-c", "omega_c", cfg.omega_c);
  merge(j, cmd, "--omega-r", "omega_r", cfg.omega_r);
  if (cmd->count("--theta") > 0) {
    cfg.theta_auto = false;
    cfg.theta = common.theta;
  } else if (j.contains("theta")) {
    cfg.theta_auto = false;
    cfg.theta = json_double(j, "theta");
  }
  std::string grid_text = common.grid;
  if (merge(j, cmd, "--grid", "grid", grid_text))
    cfg.grid = oscinfo::parse_grid_spec(grid_text);
  std::string output = common.output;
  merge(j, cmd, "--output", "output", output);
  write_output(output, oscinfo::sync_sweep_csv(cfg));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic runs for coupled-oscillator information measures "
               "and ion transport"};
  app.require_subcommand(1);

  // depth-sweep
  auto* depth = app.add_subcommand("depth-sweep",
                                   "steady-state circuit depth vs g, omega_c, or detuning");
  oscinfo::DepthSweepConfig depth_cfg;
  CommonFlags depth_common;
  std::string sweep_name = "g";
  depth->add_option("--sweep", sweep_name, "sweep variable: g|omega_c|delta");
  depth->add_option("--omega1", depth_cfg.omega1, "bare frequency 1");
  depth->add_option("--omega2", depth_cfg.omega2, "bare frequency 2");
  depth->add_option("--g", depth_cfg.g, "coupling (fixed, unless swept)");
  depth->add_option("--omega-c", depth_cfg.omega_c, "cyclotron frequency");
  depth->add_option("--omega-r", depth_cfg.omega_r, "reference frequency");
  depth_common.attach(depth);

  // quench
  auto* quench = app.add_subcommand("quench",
                                    "time series after switching on the coupling");
  oscinfo::QuenchRunConfig quench_cfg;
  CommonFlags quench_common;
  quench->add_option("--omega-i1", quench_cfg.quench.omega_i1, "pre-quench frequency 1");
  quench->add_option("--omega-i2", quench_cfg.quench.omega_i2, "pre-quench frequency 2");
  quench->add_option("--omega1", quench_cfg.quench.omega_f1, "post-quench frequency 1");
  quench->add_option("--omega2", quench_cfg.quench.omega_f2, "post-quench frequency 2");
  quench->add_option("--g", quench_cfg.quench.g_f, "post-quench coupling");
  quench->add_option("--omega-c", quench_cfg.quench.omega_c, "cyclotron frequency");
  quench->add_option("--omega-r", quench_cfg.omega_r, "reference frequency");
  quench_common.attach(quench);

  // transport
  auto* transport = app.add_subcommand("transport",
                                       "ion transport: alpha, fidelity, complexity, Q");
  oscinfo::TransportRunConfig transport_cfg;
  CommonFlags transport_common;
  std::string protocol_name = "both";
  transport->add_option("--protocol", protocol_name,
                        "sudden|smooth|tabulated|both");
  transport->add_option("--mass", transport_cfg.params.mass, "ion mass");
  transport->add_option("--omega", transport_cfg.params.omega, "trap frequency");
  transport->add_option("--beta", transport_cfg.params.beta,
                        "inverse temperature (inf for zero temperature)");
  transport->add_option("--d0", transport_cfg.d0, "sudden jump distance");
  transport->add_option("--length", transport_cfg.length, "smooth displacement L");
  transport->add_option("--duration", transport_cfg.duration, "smooth transport time T");
  transport->add_option("--table", transport_cfg.table_path,
                        "two-column (t, d) protocol file");
  transport_common.attach(transport);

  // sync-sweep
  auto* sync = app.add_subcommand("sync-sweep",
                                  "steady-state synchronization and I vs detuning");
  oscinfo::SyncSweepConfig sync_cfg;
  CommonFlags sync_common;
  sync->add_option("--omega1", sync_cfg.omega1, "bare frequency 1");
  sync->add_option("--g", sync_cfg.g, "coupling");
  sync->add_option("--omega-c", sync_cfg.omega_c, "cyclotron frequency");
  sync->add_option("--omega-r", sync_cfg.omega_r, "reference frequency");
  sync_common.attach(sync);

  CLI11_PARSE(app, argc, argv);

  try {
    if (depth->parsed())
      return run_depth_sweep(depth, depth_common, sweep_name, depth_cfg);
    if (quench->parsed()) return run_quench(quench, quench_common, quench_cfg);
    if (transport->parsed())
      return run_transport(transport, transport_common, protocol_name, transport_cfg);
    if (sync->parsed()) return run_sync_sweep(sync, sync_common, sync_cfg);
  } catch (const std::exception& e) {
    std::cerr << "oscinfo: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "oscinfo: no subcommand\n";
  return 1;
}
