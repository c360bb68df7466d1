#include "oscinfo/run.hpp"

#include "oscinfo/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>
#include <vector>

namespace oscinfo {

namespace {

// CSV data cell: 12 significant digits.
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.11e", v);
  return buf;
}

// Config echo in headers.
std::string cfg(double v) { return detail::fmt(v); }

double trapezoid_average(const Eigen::VectorXd& t, const Eigen::VectorXd& y) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i + 1 < t.size(); ++i)
    acc += 0.5 * (y(i) + y(i + 1)) * (t(i + 1) - t(i));
  return acc / (t(t.size() - 1) - t(0));
}

double parse_double_field(const std::string& text, const char* what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size())
      detail::fail(std::string("grid: trailing characters in ") + what + " '" + text + "'");
    return v;
  } catch (const std::invalid_argument&) {
    detail::fail(std::string("grid: cannot parse ") + what + " '" + text + "'");
  } catch (const std::out_of_range&) {
    detail::fail(std::string("grid: ") + what + " out of range: '" + text + "'");
  }
}

int parse_count_field(const std::string& text) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(text, &pos);
    if (pos != text.size())
      detail::fail("grid: trailing characters in count '" + text + "'");
    if (v < 0 || v > std::numeric_limits<int>::max())
      detail::fail("grid: count out of range: '" + text + "'");
    return static_cast<int>(v);
  } catch (const std::invalid_argument&) {
    detail::fail("grid: cannot parse count '" + text + "'");
  } catch (const std::out_of_range&) {
    detail::fail("grid: count out of range: '" + text + "'");
  }
}

}  // namespace

GridSpec parse_grid_spec(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    detail::fail("grid: expected start:stop:count, got '" + text + "'");
  GridSpec g;
  g.start = parse_double_field(text.substr(0, c1), "start");
  g.stop = parse_double_field(text.substr(c1 + 1, c2 - c1 - 1), "stop");
  g.count = parse_count_field(text.substr(c2 + 1));
  return g;
}

std::string format_grid_spec(const GridSpec& g) {
  return cfg(g.start) + ":" + cfg(g.stop) + ":" + std::to_string(g.count);
}

Eigen::VectorXd make_grid(const GridSpec& g) {
  if (g.count < 2)
    detail::fail("grid: count must be >= 2, got " + std::to_string(g.count));
  if (!(g.start < g.stop))
    detail::fail("grid: start must be below stop, got " + cfg(g.start) + ":" + cfg(g.stop));
  if (!std::isfinite(g.start) || !std::isfinite(g.stop))
    detail::fail("grid: endpoints must be finite");
  return Eigen::VectorXd::LinSpaced(g.count, g.start, g.stop);
}

const char* sweep_variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::coupling: return "g";
    case SweepVariable::field: return "omega_c";
    case SweepVariable::detuning: return "delta";
  }
  return "?";
}

SweepVariable parse_sweep_variable(const std::string& name) {
  if (name == "g" || name == "coupling") return SweepVariable::coupling;
  if (name == "omega_c" || name == "field") return SweepVariable::field;
  if (name == "delta" || name == "detuning") return SweepVariable::detuning;
  detail::fail("sweep: expected one of g|omega_c|delta, got '" + name + "'");
}

std::string depth_sweep_csv(const DepthSweepConfig& c) {
  const Eigen::VectorXd grid = make_grid(c.grid);
  std::string out;
  out.reserve(96 * static_cast<std::size_t>(grid.size()) + 256);
  out += "# oscinfo depth-sweep\n";
  out += std::string("# sweep=") + sweep_variable_name(c.sweep) +
         " omega1=" + cfg(c.omega1) + " omega2=" + cfg(c.omega2) +
         " g=" + cfg(c.g) + " omega_c=" + cfg(c.omega_c) +
         " omega_r=" + cfg(c.omega_r) +
         " theta=" + (c.theta_auto ? std::string("auto") : cfg(c.theta)) +
         " grid=" + format_grid_spec(c.grid) + "\n";
  out += std::string(sweep_variable_name(c.sweep)) +
         ",depth,weak_limit_diag,field_limit_diag\n";
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double v = grid(i);
    double w1 = c.omega1, w2 = c.omega2, g = c.g, wc = c.omega_c;
    switch (c.sweep) {
      case SweepVariable::coupling:
        g = v;
        break;
      case SweepVariable::field:
        wc = v;
        break;
      case SweepVariable::detuning: {
        const double w1sq = w2 * w2 + v;
        if (!(w1sq > 0.0))
          detail::fail("depth-sweep: detuning " + cfg(v) + " drives omega1^2 to " + cfg(w1sq));
        w1 = std::sqrt(w1sq);
        break;
      }
    }
    CoupledParams p{w1, w2, g, wc, 0.0, c.omega_r};
    p.theta = c.theta_auto ? decoupling_angle(g, w1, w2) : c.theta;
    const SteadyState st = steady_state_exponent(p);
    const double depth = circuit_depth(st.exponent, c.omega_r);
    const double weak = weak_coupling_depth(st.exponent, c.omega_r);
    const double field = wc > 0.0 ? field_dominated_depth(wc, c.omega_r)
                                  : std::numeric_limits<double>::quiet_NaN();
    out += num(v) + "," + num(depth) + "," + num(weak) + "," + num(field) + "\n";
  }
  return out;
}

std::string quench_csv(const QuenchRunConfig& c) {
  validate(c.quench);
  detail::require_positive(c.omega_r, "omega_r", "quench");
  const double theta =
      c.theta_auto ? decoupling_angle(c.quench.g_f, c.quench.omega_f1, c.quench.omega_f2)
                   : c.theta;
  const Eigen::VectorXd grid = make_grid(c.grid);
  const ErmakovSolution sol = solve_quench_ermakov(c.quench, grid, theta);
  const CoupledParams post{c.quench.omega_f1, c.quench.omega_f2, c.quench.g_f,
                           c.quench.omega_c, theta, c.omega_r};

  const Eigen::Index n = grid.size();
  Eigen::VectorXd scs(n), mis(n);
  std::string out;
  out.reserve(120 * static_cast<std::size_t>(n) + 512);
  out += "# oscinfo quench\n";
  out += "# omega_i1=" + cfg(c.quench.omega_i1) + " omega_i2=" + cfg(c.quench.omega_i2) +
         " omega_f1=" + cfg(c.quench.omega_f1) + " omega_f2=" + cfg(c.quench.omega_f2) +
         " g_f=" + cfg(c.quench.g_f) + " omega_c=" + cfg(c.quench.omega_c) +
         " omega_r=" + cfg(c.omega_r) + " theta=" + cfg(theta) +
         " grid=" + format_grid_spec(c.grid) + "\n";
  out += "# max_residual_h1=" + cfg(sol.max_residual1) +
         " max_residual_h2=" + cfg(sol.max_residual2) + "\n";
  out += "t,S_c,I,depth,h1,h2\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    const GaussianExponent e = gaussian_exponent_at_index(post, sol, i);
    const CovarianceMatrix sigma = exponent_to_covariance(e);
    scs(i) = synchronization(sigma);
    mis(i) = mutual_information(sigma);
    const double depth = circuit_depth(e, c.omega_r);
    out += num(grid(i)) + "," + num(scs(i)) + "," + num(mis(i)) + "," +
           num(depth) + "," + num(sol.h1(i)) + "," + num(sol.h2(i)) + "\n";
  }
  out += "# time_avg_S_c," + num(trapezoid_average(grid, scs)) + "\n";
  out += "# time_avg_I," + num(trapezoid_average(grid, mis)) + "\n";
  return out;
}

const char* protocol_selection_name(ProtocolSelection s) {
  switch (s) {
    case ProtocolSelection::sudden: return "sudden";
    case ProtocolSelection::smooth: return "smooth";
    case ProtocolSelection::tabulated: return "tabulated";
    case ProtocolSelection::both: return "both";
  }
  return "?";
}

ProtocolSelection parse_protocol_selection(const std::string& name) {
  if (name == "sudden") return ProtocolSelection::sudden;
  if (name == "smooth") return ProtocolSelection::smooth;
  if (name == "tabulated" || name == "table") return ProtocolSelection::tabulated;
  if (name == "both") return ProtocolSelection::both;
  detail::fail("protocol: expected sudden|smooth|tabulated|both, got '" + name + "'");
}

std::string transport_csv(const TransportRunConfig& c) {
  validate(c.params);
  const double vartheta = tfd_theta(c.params.beta, c.params.omega);
  const Eigen::VectorXd grid = make_grid(c.grid);

  std::vector<std::pair<std::string, TransportProtocol>> protos;
  switch (c.selection) {
    case ProtocolSelection::sudden:
      protos.emplace_back("sudden", sudden_protocol(c.d0));
      break;
    case ProtocolSelection::smooth:
      protos.emplace_back("smooth", smooth_protocol(c.length, c.duration));
      break;
    case ProtocolSelection::tabulated:
      if (c.table_path.empty())
        detail::fail("transport: tabulated protocol needs --table <file>");
      protos.emplace_back("table", read_protocol_table_file(c.table_path));
      break;
    case ProtocolSelection::both:
      protos.emplace_back("sudden", sudden_protocol(c.d0));
      protos.emplace_back("smooth", smooth_protocol(c.length, c.duration));
      break;
  }

  std::vector<AmplitudeTrajectory> trajs;
  trajs.reserve(protos.size());
  for (const auto& [name, proto] : protos) trajs.push_back(alpha_of_t(c.params, proto, grid));

  std::string out;
  out.reserve(40 * (1 + 5 * protos.size()) * static_cast<std::size_t>(grid.size()) + 512);
  out += "# oscinfo transport\n";
  out += "# mass=" + cfg(c.params.mass) + " omega=" + cfg(c.params.omega) +
         " beta=" + cfg(c.params.beta) + " d0=" + cfg(c.d0) +
         " length=" + cfg(c.length) + " duration=" + cfg(c.duration) +
         " protocol=" + protocol_selection_name(c.selection);
  if (!c.table_path.empty()) out += " table=" + c.table_path;
  out += " vartheta=" + cfg(vartheta) + " grid=" + format_grid_spec(c.grid) + "\n";
  out += "t";
  for (const auto& [name, proto] : protos)
    out += ",re_alpha_" + name + ",im_alpha_" + name + ",F_" + name + ",C_" + name +
           ",Q_" + name;
  out += "\n";
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    out += num(grid(i));
    for (const auto& traj : trajs) {
      const Complex a = traj.alpha(i);
      out += "," + num(a.real()) + "," + num(a.imag()) +
             "," + num(coherent_fidelity(a, traj.alpha(0))) +
             "," + num(coherent_complexity(a, vartheta)) +
             "," + num(nonadiabaticity(a));
    }
    out += "\n";
  }
  return out;
}

std::string sync_sweep_csv(const SyncSweepConfig& c) {
  detail::require_positive(c.omega1, "omega1", "sync-sweep");
  const Eigen::VectorXd grid = make_grid(c.grid);
  std::string out;
  out.reserve(60 * static_cast<std::size_t>(grid.size()) + 256);
  out += "# oscinfo sync-sweep\n";
  out += "# omega1=" + cfg(c.omega1) + " g=" + cfg(c.g) + " omega_c=" + cfg(c.omega_c) +
         " omega_r=" + cfg(c.omega_r) +
         " theta=" + (c.theta_auto ? std::string("auto") : cfg(c.theta)) +
         " grid=" + format_grid_spec(c.grid) + "\n";
  out += "detuning,S_c,I\n";
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double delta = grid(i);
    const double w2 = c.omega1 + delta;
    if (!(w2 > 0.0))
      detail::fail("sync-sweep: detuning " + cfg(delta) + " gives omega2 = " + cfg(w2));
    CoupledParams p{c.omega1, w2, c.g, c.omega_c, 0.0, c.omega_r};
    p.theta = c.theta_auto ? decoupling_angle(c.g, c.omega1, w2) : c.theta;
    const SteadyState st = steady_state_exponent(p);
    const CovarianceMatrix sigma = exponent_to_covariance(st.exponent);
    out += num(delta) + "," + num(synchronization(sigma)) + "," +
           num(mutual_information(sigma)) + "\n";
  }
  return out;
}

}  // namespace oscinfo
