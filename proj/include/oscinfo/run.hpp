#pragma once

// CSV-producing run drivers behind the command-line tool. Output is
// deterministic: fixed grids, fixed formatting, no wall-clock input.
// Every CSV starts with '#' metadata lines echoing the resolved config,
// then a column-name line, then one row per grid point.

#include "oscinfo/coupled.hpp"
#include "oscinfo/transport.hpp"

#include <string>

namespace oscinfo {

struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  int count = 2;
};

// "start:stop:count"
GridSpec parse_grid_spec(const std::string& text);
std::string format_grid_spec(const GridSpec& g);
Eigen::VectorXd make_grid(const GridSpec& g);

enum class SweepVariable { coupling, field, detuning };

const char* sweep_variable_name(SweepVariable v);
SweepVariable parse_sweep_variable(const std::string& name);

struct DepthSweepConfig {
  SweepVariable sweep = SweepVariable::coupling;
  double omega1 = 1.0;
  double omega2 = 1.2;
  double g = 0.5;
  double omega_c = 1.5;
  double omega_r = 1.0;
  bool theta_auto = true;  // decoupling angle per sweep point
  double theta = 0.0;
  GridSpec grid{0.0, 2.0, 201};
};

// Columns: <sweep_var>, depth, weak_limit_diag, field_limit_diag.
// The detuning sweep varies delta = omega1^2 - omega2^2 at fixed omega2;
// field_limit_diag is NaN where omega_c = 0.
std::string depth_sweep_csv(const DepthSweepConfig& cfg);

struct QuenchRunConfig {
  QuenchSpec quench{};
  double omega_r = 1.0;
  bool theta_auto = true;  // decoupling angle of the post-quench parameters
  double theta = 0.0;
  GridSpec grid{0.0, 20.0, 2001};
};

// Columns: t, S_c, I, depth, h1, h2; trailing '#' rows carry the
// trapezoid time averages of S_c and I.
std::string quench_csv(const QuenchRunConfig& cfg);

enum class ProtocolSelection { sudden, smooth, tabulated, both };

const char* protocol_selection_name(ProtocolSelection s);
ProtocolSelection parse_protocol_selection(const std::string& name);

struct TransportRunConfig {
  TransportParams params{};
  ProtocolSelection selection = ProtocolSelection::both;  // sudden + smooth
  double d0 = 1.0;
  double length = 1.0;
  double duration = 2.0;
  std::string table_path;  // required for the tabulated selection
  GridSpec grid{0.0, 10.0, 1001};
};

// Columns: t, then per protocol re_alpha_*, im_alpha_*, F_*, C_*, Q_*.
std::string transport_csv(const TransportRunConfig& cfg);

struct SyncSweepConfig {
  double omega1 = 1.0;
  double g = 0.5;
  double omega_c = 1.0;
  double omega_r = 1.0;
  bool theta_auto = true;
  double theta = 0.0;
  GridSpec grid{-0.8, 0.8, 161};  // detuning omega2 - omega1
};

// Steady-state S_c and I versus detuning. Columns: detuning, S_c, I.
std::string sync_sweep_csv(const SyncSweepConfig& cfg);

}  // namespace oscinfo
