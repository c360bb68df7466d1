#pragma once

// Single-ion transport in a moving harmonic trap. The trap minimum follows a
// displacement protocol d(t); the motional state stays coherent with
// amplitude
//   alpha(t) = sqrt(m omega / 2) (d(t) - e^{-i omega t} Int_0^t ddot(t') e^{i omega t'} dt')
// from which fidelity, thermofield-double complexity, and nonadiabaticity
// follow.

#include "oscinfo/gaussian.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace oscinfo {

enum class ProtocolKind { sudden, smooth, tabulated };

struct TransportProtocol {
  ProtocolKind kind = ProtocolKind::sudden;
  double d0 = 1.0;        // sudden jump distance
  double length = 1.0;    // smooth total displacement L
  double duration = 2.0;  // smooth transport time T, d(t) = L sin^2(pi t / 2T)
  Eigen::VectorXd table_t, table_d, table_rate;
};

inline TransportProtocol sudden_protocol(double d0) {
  TransportProtocol p;
  p.kind = ProtocolKind::sudden;
  p.d0 = d0;
  return p;
}

inline TransportProtocol smooth_protocol(double length, double duration) {
  detail::require_positive(duration, "duration", "smooth_protocol");
  TransportProtocol p;
  p.kind = ProtocolKind::smooth;
  p.length = length;
  p.duration = duration;
  return p;
}

/// Tabulated displacement protocol. Times must be strictly increasing and
/// start at 0 with d(0) = 0. Between nodes d(t) interpolates linearly; the
/// rate uses centered differences at interior nodes (one-sided at the ends)
/// interpolated linearly. Past the last node d stays at its final value with
/// zero rate.
inline TransportProtocol tabulated_protocol(const Eigen::VectorXd& t,
                                            const Eigen::VectorXd& d) {
  if (t.size() != d.size())
    detail::fail("tabulated_protocol: column length mismatch, " +
                 std::to_string(t.size()) + " vs " + std::to_string(d.size()));
  if (t.size() < 2) detail::fail("tabulated_protocol: need at least 2 rows");
  if (std::abs(t(0)) > 1e-12)
    detail::fail("tabulated_protocol: times must start at 0, got " + detail::fmt(t(0)));
  if (std::abs(d(0)) > 1e-12)
    detail::fail("tabulated_protocol: displacement must start at 0, got " + detail::fmt(d(0)));
  for (Eigen::Index i = 0; i + 1 < t.size(); ++i)
    if (!(t(i + 1) > t(i)))
      detail::fail("tabulated_protocol: times must be strictly increasing, row " +
                   std::to_string(i + 1));
  TransportProtocol p;
  p.kind = ProtocolKind::tabulated;
  p.table_t = t;
  p.table_d = d;
  const Eigen::Index n = t.size();
  p.table_rate.resize(n);
  p.table_rate(0) = (d(1) - d(0)) / (t(1) - t(0));
  for (Eigen::Index i = 1; i + 1 < n; ++i)
    p.table_rate(i) = (d(i + 1) - d(i - 1)) / (t(i + 1) - t(i - 1));
  p.table_rate(n - 1) = (d(n - 1) - d(n - 2)) / (t(n - 1) - t(n - 2));
  return p;
}

/// Two-column whitespace text (time, displacement); lines starting with '#'
/// are comments.
inline TransportProtocol read_protocol_table(std::istream& in) {
  std::vector<double> ts, ds;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    double t = 0.0, d = 0.0;
    std::string extra;
    if (!(row >> t >> d))
      detail::fail("protocol table: cannot parse line " + std::to_string(lineno) +
                   ": '" + line + "'");
    if (row >> extra)
      detail::fail("protocol table: expected two columns on line " +
                   std::to_string(lineno) + ", got extra '" + extra + "'");
    ts.push_back(t);
    ds.push_back(d);
  }
  if (ts.size() < 2) detail::fail("protocol table: need at least 2 data rows");
  return tabulated_protocol(
      Eigen::Map<const Eigen::VectorXd>(ts.data(), static_cast<Eigen::Index>(ts.size())),
      Eigen::Map<const Eigen::VectorXd>(ds.data(), static_cast<Eigen::Index>(ds.size())));
}

inline TransportProtocol read_protocol_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) detail::fail("protocol table: cannot open '" + path + "'");
  return read_protocol_table(in);
}

struct TransportParams {
  double mass = 1.0;
  double omega = 2.0;
  double beta = 1.0;  // inverse temperature; +infinity selects the pure TFD
};

inline void validate(const TransportParams& p) {
  detail::require_positive(p.mass, "mass", "TransportParams");
  detail::require_positive(p.omega, "omega", "TransportParams");
  if (std::isnan(p.beta)) detail::fail("TransportParams: beta is NaN");
  if (!(p.beta > 0.0))
    detail::fail("TransportParams: beta must be positive (or +inf), got " +
                 detail::fmt(p.beta));
}

/// Trap displacement d(t). The sudden protocol jumps at t = 0+, so d(0) = 0
/// and d(t > 0) = d0.
inline double displacement(const TransportProtocol& p, double t) {
  switch (p.kind) {
    case ProtocolKind::sudden:
      return t > 0.0 ? p.d0 : 0.0;
    case ProtocolKind::smooth: {
      if (t <= 0.0) return 0.0;
      if (t >= p.duration) return p.length;
      const double s = std::sin(0.5 * std::numbers::pi * t / p.duration);
      return p.length * s * s;
    }
    case ProtocolKind::tabulated: {
      const Eigen::Index n = p.table_t.size();
      if (t <= p.table_t(0)) return p.table_d(0);
      if (t >= p.table_t(n - 1)) return p.table_d(n - 1);
      const double* begin = p.table_t.data();
      const Eigen::Index k = std::upper_bound(begin, begin + n, t) - begin - 1;
      const double w = (t - p.table_t(k)) / (p.table_t(k + 1) - p.table_t(k));
      return p.table_d(k) + w * (p.table_d(k + 1) - p.table_d(k));
    }
  }
  detail::fail("displacement: invalid protocol kind");
}

/// Trap velocity ddot(t). The sudden protocol's delta spike at t = 0 is not
/// representable here; alpha_of_t handles sudden jumps in closed form and
/// never calls this for them.
inline double displacement_rate(const TransportProtocol& p, double t) {
  switch (p.kind) {
    case ProtocolKind::sudden:
      return 0.0;
    case ProtocolKind::smooth: {
      if (t <= 0.0 || t >= p.duration) return 0.0;
      return p.length * 0.5 * std::numbers::pi / p.duration *
             std::sin(std::numbers::pi * t / p.duration);
    }
    case ProtocolKind::tabulated: {
      const Eigen::Index n = p.table_t.size();
      if (t <= p.table_t(0) || t >= p.table_t(n - 1)) return 0.0;
      const double* begin = p.table_t.data();
      const Eigen::Index k = std::upper_bound(begin, begin + n, t) - begin - 1;
      const double w = (t - p.table_t(k)) / (p.table_t(k + 1) - p.table_t(k));
      return p.table_rate(k) + w * (p.table_rate(k + 1) - p.table_rate(k));
    }
  }
  detail::fail("displacement_rate: invalid protocol kind");
}

struct AmplitudeTrajectory {
  Eigen::VectorXd t;
  Eigen::VectorXcd alpha;
};

/// Coherent amplitude along the grid. Sudden protocols use the closed form
/// alpha = sqrt(m omega/2) d0 (1 - e^{-i omega t}); the others integrate
/// ddot(t') e^{i omega t'} cumulatively with per-interval Simpson (midpoint
/// evaluation), so the grid may be non-uniform but must start at 0 and
/// increase strictly.
inline AmplitudeTrajectory alpha_of_t(const TransportParams& params,
                                      const TransportProtocol& proto,
                                      const Eigen::VectorXd& t_grid) {
  validate(params);
  if (t_grid.size() < 1) detail::fail("alpha_of_t: empty time grid");
  if (std::abs(t_grid(0)) > 1e-12)
    detail::fail("alpha_of_t: time grid must start at 0, got " + detail::fmt(t_grid(0)));
  for (Eigen::Index i = 0; i + 1 < t_grid.size(); ++i)
    if (!(t_grid(i + 1) > t_grid(i)))
      detail::fail("alpha_of_t: time grid must be strictly increasing");

  const Eigen::Index n = t_grid.size();
  const double scale = std::sqrt(0.5 * params.mass * params.omega);
  AmplitudeTrajectory traj;
  traj.t = t_grid;
  traj.alpha.resize(n);

  if (proto.kind == ProtocolKind::sudden) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Complex rot = std::exp(Complex(0.0, -params.omega * t_grid(i)));
      traj.alpha(i) = scale * proto.d0 * (1.0 - rot);
    }
    return traj;
  }

  const auto f = [&](double tau) {
    return displacement_rate(proto, tau) * std::exp(Complex(0.0, params.omega * tau));
  };
  Complex acc(0.0, 0.0);
  traj.alpha(0) = Complex(scale * displacement(proto, t_grid(0)), 0.0);
  for (Eigen::Index i = 1; i < n; ++i) {
    const double t0 = t_grid(i - 1), t1 = t_grid(i);
    acc += (t1 - t0) / 6.0 * (f(t0) + 4.0 * f(0.5 * (t0 + t1)) + f(t1));
    traj.alpha(i) = scale * (displacement(proto, t1) -
                             std::exp(Complex(0.0, -params.omega * t1)) * acc);
  }
  return traj;
}

/// Overlap fidelity between coherent states, |<a|b>|^2 = e^{-|a - b|^2}.
inline double coherent_fidelity(Complex a, Complex b) {
  return std::exp(-std::norm(a - b));
}

/// Fidelity F(t) = e^{-|alpha(t) - alpha(0)|^2} at a stored grid point.
inline double fidelity(const AmplitudeTrajectory& traj, double t) {
  const Eigen::Index i = detail::grid_index(traj.t, t, "fidelity");
  return coherent_fidelity(traj.alpha(i), traj.alpha(0));
}

/// Thermofield-double squeezing parameter vartheta = atanh(e^{-beta omega/2}).
/// beta = +inf gives 0 (zero temperature).
inline double tfd_theta(double beta, double omega) {
  detail::require_positive(omega, "omega", "tfd_theta");
  if (std::isnan(beta)) detail::fail("tfd_theta: beta is NaN");
  if (std::isinf(beta)) {
    if (beta > 0.0) return 0.0;
    detail::fail("tfd_theta: beta must be positive");
  }
  if (!(beta > 0.0))
    detail::fail("tfd_theta: beta * omega must be positive, got beta = " + detail::fmt(beta));
  return std::atanh(std::exp(-0.5 * beta * omega));
}

/// Complexity of a displaced thermofield double,
///   C = vartheta csch(vartheta/2) sqrt((|alpha|^2 + 2) cosh(vartheta) - 2).
/// The vartheta -> 0 limit of the prefactor is 2, giving C -> 2|alpha|.
inline double coherent_complexity(Complex alpha, double vartheta) {
  if (!(vartheta >= 0.0))
    detail::fail("coherent_complexity: vartheta must be >= 0, got " + detail::fmt(vartheta));
  const double a2 = std::norm(alpha);
  if (vartheta == 0.0) return 2.0 * std::sqrt(a2);
  const double radicand = (a2 + 2.0) * std::cosh(vartheta) - 2.0;
  return vartheta / std::sinh(0.5 * vartheta) * std::sqrt(radicand);
}

/// Nonadiabaticity Q = 2 |alpha|^2 (excess phonons over the comoving ground
/// state, in units of hbar omega / 2).
inline double nonadiabaticity(Complex alpha) { return 2.0 * std::norm(alpha); }

/// <H> = omega (|alpha|^2 + 1/2) for a coherent state (hbar = 1).
inline double expectation_energy(Complex alpha, double omega) {
  detail::require_positive(omega, "omega", "expectation_energy");
  return omega * (std::norm(alpha) + 0.5);
}

}  // namespace oscinfo
