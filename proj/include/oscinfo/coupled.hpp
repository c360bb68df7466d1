#pragma once

// Two harmonic oscillators with bilinear coupling g*x1*x2 in a uniform
// magnetic field (cyclotron frequency omega_c). Ground states and quench
// dynamics in the rotating-mode ansatz: rotated coordinates at angle
// phi(t) = omega_c t + theta decouple into two modes whose widths follow
// Ermakov scale factors h_j(t).

#include "oscinfo/gaussian.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>

namespace oscinfo {

struct CoupledParams {
  double omega1 = 1.0;   // bare frequencies
  double omega2 = 1.2;
  double g = 0.0;        // coupling, units of frequency^2
  double omega_c = 0.0;  // cyclotron frequency
  double theta = 0.0;    // rotating-frame offset angle
  double omega_r = 1.0;  // reference frequency for depth measures
};

inline void validate(const CoupledParams& p) {
  detail::require_positive(p.omega1, "omega1", "CoupledParams");
  detail::require_positive(p.omega2, "omega2", "CoupledParams");
  detail::require_nonnegative(p.omega_c, "omega_c", "CoupledParams");
  detail::require_positive(p.omega_r, "omega_r", "CoupledParams");
}

/// Mixing angle that removes the static cross term, in (-pi/2, pi/2]:
/// theta = (1/2) atan2(2g, omega1^2 - omega2^2).
inline double decoupling_angle(double g, double omega1, double omega2) {
  return 0.5 * std::atan2(2.0 * g, (omega1 - omega2) * (omega1 + omega2));
}

/// CoupledParams with theta preset to the decoupling angle.
inline CoupledParams make_params(double omega1, double omega2, double g,
                                 double omega_c, double omega_r = 1.0) {
  CoupledParams p{omega1, omega2, g, omega_c,
                  decoupling_angle(g, omega1, omega2), omega_r};
  validate(p);
  return p;
}

struct ModeFrequencies {
  double omega1_sq = 0.0;  // rotated-mode squared frequencies
  double omega2_sq = 0.0;
  double cross_sq = 0.0;   // residual cross coefficient at this angle
  bool inverted = false;   // either squared frequency <= 0
};

/// Rotated-mode squared frequencies at angle phi:
///   Omega1^2 = omega1^2 cos^2 + omega2^2 sin^2 + omega_c^2 + g sin(2 phi)
///   Omega2^2 = omega1^2 sin^2 + omega2^2 cos^2 + omega_c^2 - g sin(2 phi)
///   Omega12^2 = (omega1^2 - omega2^2) sin(2 phi) / 2 - g cos(2 phi)
inline ModeFrequencies mode_frequencies(const CoupledParams& p, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  const double s2 = std::sin(2.0 * phi), c2 = std::cos(2.0 * phi);
  const double w1s = p.omega1 * p.omega1;
  const double w2s = p.omega2 * p.omega2;
  const double wcs = p.omega_c * p.omega_c;
  ModeFrequencies f;
  f.omega1_sq = w1s * c * c + w2s * s * s + wcs + p.g * s2;
  f.omega2_sq = w1s * s * s + w2s * c * c + wcs - p.g * s2;
  f.cross_sq = 0.5 * (w1s - w2s) * s2 - p.g * c2;
  f.inverted = f.omega1_sq <= 0.0 || f.omega2_sq <= 0.0;
  return f;
}

struct ErmakovModeSolution {
  Eigen::VectorXd t;
  Eigen::VectorXd h;
  Eigen::VectorXd hdot;
  double omega0 = 0.0;  // constant in the h^{-3} term
  // Max |hddot + Omega^2 h - omega0^2/h^3| from a five-point stencil on the
  // grid interior; NaN for grids shorter than 5 points.
  double max_residual = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline void require_uniform_from_zero(const Eigen::VectorXd& t, const char* where) {
  if (t.size() < 2)
    fail(std::string(where) + ": time grid needs at least 2 points");
  if (std::abs(t(0)) > 1e-12)
    fail(std::string(where) + ": time grid must start at 0, got t(0) = " + fmt(t(0)));
  const double dt = t(1) - t(0);
  if (!(dt > 0.0))
    fail(std::string(where) + ": time grid must be increasing");
  for (Eigen::Index i = 1; i + 1 < t.size(); ++i)
    if (std::abs(t(i + 1) - t(i) - dt) > 1e-8 * dt + 1e-13 * std::abs(t(i + 1)))
      fail(std::string(where) + ": time grid must be uniform (fixed-step integrator), step " +
           std::to_string(i) + " deviates");
}

}  // namespace detail

/// Fixed-step RK4 for the Ermakov equation
///   hddot + Omega^2(t) h = omega0^2 / h^3,  h(0) = 1, hdot(0) = 0,
/// one step per grid interval. `omega_sq` is any callable t -> Omega^2(t).
/// Aborts if the scale factor reaches zero (pick a finer grid).
template <typename FreqSq>
ErmakovModeSolution solve_ermakov(FreqSq&& omega_sq, double omega0,
                                  const Eigen::VectorXd& t_grid) {
  detail::require_uniform_from_zero(t_grid, "solve_ermakov");
  detail::require_positive(omega0, "omega0", "solve_ermakov");
  const Eigen::Index n = t_grid.size();
  const double dt = t_grid(1) - t_grid(0);
  const double o0sq = omega0 * omega0;

  ErmakovModeSolution sol;
  sol.t = t_grid;
  sol.h.resize(n);
  sol.hdot.resize(n);
  sol.omega0 = omega0;

  const auto acc = [&](double time, double h) {
    if (!(h > 0.0))
      throw std::runtime_error("solve_ermakov: scale factor reached zero near t = " +
                               detail::fmt(time) + " (grid step too coarse?)");
    return o0sq / (h * h * h) - omega_sq(time) * h;
  };

  double h = 1.0, v = 0.0;
  sol.h(0) = h;
  sol.hdot(0) = v;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double t = t_grid(i);
    const double k1h = v, k1v = acc(t, h);
    const double k2h = v + 0.5 * dt * k1v, k2v = acc(t + 0.5 * dt, h + 0.5 * dt * k1h);
    const double k3h = v + 0.5 * dt * k2v, k3v = acc(t + 0.5 * dt, h + 0.5 * dt * k2h);
    const double k4h = v + dt * k3v, k4v = acc(t + dt, h + dt * k3h);
    h += dt / 6.0 * (k1h + 2.0 * k2h + 2.0 * k3h + k4h);
    v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!(h > 0.0))
      throw std::runtime_error("solve_ermakov: scale factor reached zero near t = " +
                               detail::fmt(t_grid(i + 1)) + " (grid step too coarse?)");
    sol.h(i + 1) = h;
    sol.hdot(i + 1) = v;
  }

  if (n >= 5) {
    double worst = 0.0;
    for (Eigen::Index i = 2; i + 2 < n; ++i) {
      const double hdd = (sol.hdot(i - 2) - 8.0 * sol.hdot(i - 1) +
                          8.0 * sol.hdot(i + 1) - sol.hdot(i + 2)) / (12.0 * dt);
      const double hi = sol.h(i);
      const double r = hdd + omega_sq(t_grid(i)) * hi - o0sq / (hi * hi * hi);
      worst = std::max(worst, std::abs(r));
    }
    sol.max_residual = worst;
  }
  return sol;
}

/// Closed-form h^2(t) after an instantaneous frequency jump
/// omega_i -> omega_f at constant post-quench frequency:
///   h^2 = cos^2(omega_f t) + (omega_i/omega_f)^2 sin^2(omega_f t).
inline double quench_ermakov_analytic(double omega_i, double omega_f, double t) {
  detail::require_positive(omega_i, "omega_i", "quench_ermakov_analytic");
  detail::require_positive(omega_f, "omega_f", "quench_ermakov_analytic");
  const double fi = omega_f * omega_f;
  const double ii = omega_i * omega_i;
  return (fi - ii) / (2.0 * fi) * std::cos(2.0 * omega_f * t) + (fi + ii) / (2.0 * fi);
}

// Instantaneous quench at t = 0: bare frequencies jump (omega_i1, omega_i2) ->
// (omega_f1, omega_f2) and the coupling switches from 0 to g_f. The field is
// unchanged by the quench.
struct QuenchSpec {
  double omega_i1 = 2.0;
  double omega_i2 = 2.01;
  double omega_f1 = 2.0;
  double omega_f2 = 2.01;
  double g_f = 1.0;
  double omega_c = 1.0;
};

inline void validate(const QuenchSpec& q) {
  detail::require_positive(q.omega_i1, "omega_i1", "QuenchSpec");
  detail::require_positive(q.omega_i2, "omega_i2", "QuenchSpec");
  detail::require_positive(q.omega_f1, "omega_f1", "QuenchSpec");
  detail::require_positive(q.omega_f2, "omega_f2", "QuenchSpec");
  detail::require_nonnegative(q.omega_c, "omega_c", "QuenchSpec");
}

struct ErmakovSolution {
  Eigen::VectorXd t;
  Eigen::VectorXd h1, hdot1;
  Eigen::VectorXd h2, hdot2;
  double omega0_1 = 0.0;  // pre-quench rotated-mode frequencies
  double omega0_2 = 0.0;
  double theta = 0.0;
  double max_residual1 = std::numeric_limits<double>::quiet_NaN();
  double max_residual2 = std::numeric_limits<double>::quiet_NaN();
};

/// Integrate both Ermakov scale factors for a quench. The mixing angle is the
/// caller's; the overload below defaults it to the decoupling angle of the
/// post-quench parameters. Pre-quench rotated modes (g = 0, same theta) set
/// the omega0 constants and the t = 0 state.
inline ErmakovSolution solve_quench_ermakov(const QuenchSpec& q,
                                            const Eigen::VectorXd& t_grid,
                                            double theta) {
  validate(q);
  const CoupledParams pre{q.omega_i1, q.omega_i2, 0.0, q.omega_c, theta, 1.0};
  const CoupledParams post{q.omega_f1, q.omega_f2, q.g_f, q.omega_c, theta, 1.0};
  const ModeFrequencies f0 = mode_frequencies(pre, theta);

  for (Eigen::Index i = 0; i < t_grid.size(); ++i) {
    const ModeFrequencies ft = mode_frequencies(post, q.omega_c * t_grid(i) + theta);
    if (ft.inverted)
      detail::fail("solve_quench_ermakov: inverted mode at t = " + detail::fmt(t_grid(i)) +
                   " (Omega1^2 = " + detail::fmt(ft.omega1_sq) +
                   ", Omega2^2 = " + detail::fmt(ft.omega2_sq) +
                   "; omega_f1 = " + detail::fmt(q.omega_f1) +
                   ", omega_f2 = " + detail::fmt(q.omega_f2) +
                   ", g_f = " + detail::fmt(q.g_f) +
                   ", omega_c = " + detail::fmt(q.omega_c) + ")");
  }

  const auto osq1 = [&](double t) {
    return mode_frequencies(post, q.omega_c * t + theta).omega1_sq;
  };
  const auto osq2 = [&](double t) {
    return mode_frequencies(post, q.omega_c * t + theta).omega2_sq;
  };
  const ErmakovModeSolution m1 = solve_ermakov(osq1, std::sqrt(f0.omega1_sq), t_grid);
  const ErmakovModeSolution m2 = solve_ermakov(osq2, std::sqrt(f0.omega2_sq), t_grid);

  ErmakovSolution out;
  out.t = t_grid;
  out.h1 = m1.h;
  out.hdot1 = m1.hdot;
  out.h2 = m2.h;
  out.hdot2 = m2.hdot;
  out.omega0_1 = m1.omega0;
  out.omega0_2 = m2.omega0;
  out.theta = theta;
  out.max_residual1 = m1.max_residual;
  out.max_residual2 = m2.max_residual;
  return out;
}

inline ErmakovSolution solve_quench_ermakov(const QuenchSpec& q,
                                            const Eigen::VectorXd& t_grid) {
  return solve_quench_ermakov(q, t_grid,
                              decoupling_angle(q.g_f, q.omega_f1, q.omega_f2));
}

/// Time-dependent Gaussian exponent at grid index i. With
/// u_j = Omega_j(0)/h_j - i hdot_j/h_j and phi = omega_c t + theta:
///   A1 = u1 cos^2 + u2 sin^2, A2 = u2 cos^2 + u1 sin^2,
///   A12 = (u1 - u2) sin cos.
inline GaussianExponent gaussian_exponent_at_index(const CoupledParams& p,
                                                   const ErmakovSolution& sol,
                                                   Eigen::Index i) {
  if (i < 0 || i >= sol.t.size())
    detail::fail("gaussian_exponent_at_index: index " + std::to_string(i) +
                 " out of range for grid of size " + std::to_string(sol.t.size()));
  const double h1 = sol.h1(i), h2 = sol.h2(i);
  if (!(h1 > 0.0) || !(h2 > 0.0))
    detail::fail("gaussian_exponent_at_index: invalid scale factors h1 = " +
                 detail::fmt(h1) + ", h2 = " + detail::fmt(h2));
  const double phi = p.omega_c * sol.t(i) + p.theta;
  const double c = std::cos(phi), s = std::sin(phi);
  const Complex u1(sol.omega0_1 / h1, -sol.hdot1(i) / h1);
  const Complex u2(sol.omega0_2 / h2, -sol.hdot2(i) / h2);
  return {u1 * (c * c) + u2 * (s * s), u2 * (c * c) + u1 * (s * s), (u1 - u2) * (s * c)};
}

inline GaussianExponent gaussian_exponent_at(const CoupledParams& p,
                                             const ErmakovSolution& sol,
                                             double time) {
  return gaussian_exponent_at_index(
      p, sol, detail::grid_index(sol.t, time, "gaussian_exponent_at"));
}

struct SteadyState {
  GaussianExponent exponent;
  double normalization = 0.0;  // (Omega1 Omega2 / pi^2)^{1/4}
  double omega_mode1 = 0.0;    // rotated-mode frequencies at theta
  double omega_mode2 = 0.0;
};

/// Rotating-frame ground state at fixed mixing angle p.theta:
///   A1 = Omega1 cos^2 + Omega2 sin^2, A2 = Omega2 cos^2 + Omega1 sin^2,
///   A12 = (Omega1 - Omega2) sin cos.
inline SteadyState steady_state_exponent(const CoupledParams& p) {
  validate(p);
  const ModeFrequencies f = mode_frequencies(p, p.theta);
  if (f.inverted)
    detail::fail(std::string("steady_state_exponent: inverted mode ") +
                 (f.omega1_sq <= 0.0 ? "1" : "2") +
                 " (Omega1^2 = " + detail::fmt(f.omega1_sq) +
                 ", Omega2^2 = " + detail::fmt(f.omega2_sq) +
                 "; omega1 = " + detail::fmt(p.omega1) +
                 ", omega2 = " + detail::fmt(p.omega2) +
                 ", g = " + detail::fmt(p.g) +
                 ", omega_c = " + detail::fmt(p.omega_c) +
                 ", theta = " + detail::fmt(p.theta) + ")");
  const double o1 = std::sqrt(f.omega1_sq);
  const double o2 = std::sqrt(f.omega2_sq);
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  SteadyState st;
  st.exponent = {Complex(o1 * c * c + o2 * s * s, 0.0),
                 Complex(o2 * c * c + o1 * s * s, 0.0),
                 Complex((o1 - o2) * s * c, 0.0)};
  st.normalization =
      std::pow(o1 * o2 / (std::numbers::pi * std::numbers::pi), 0.25);
  st.omega_mode1 = o1;
  st.omega_mode2 = o2;
  return st;
}

}  // namespace oscinfo
