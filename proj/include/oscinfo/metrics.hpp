#pragma once

// Information and complexity measures on two-mode Gaussian states.

#include "oscinfo/gaussian.hpp"

#include <cmath>
#include <complex>

namespace oscinfo {

/// Circuit depth of the exponent relative to a factorized reference at
/// frequency omega_r:
///   D = (1/2) log(|A1 A2 - A12^2| / omega_r^2) + |A12 / A1|.
/// Complex combinations enter through their moduli.
inline double circuit_depth(const GaussianExponent& e, double omega_r) {
  detail::require_physical(e, "circuit_depth");
  detail::require_positive(omega_r, "omega_r", "circuit_depth");
  const double det = std::abs(e.a1 * e.a2 - e.a12 * e.a12);
  if (det == 0.0)
    detail::fail("circuit_depth: degenerate exponent, |a1 a2 - a12^2| = 0");
  return 0.5 * std::log(det / (omega_r * omega_r)) + std::abs(e.a12 / e.a1);
}

/// Weak-coupling companion: squeezing cost alone, (1/2) log(|A1 A2| / omega_r^2).
inline double weak_coupling_depth(const GaussianExponent& e, double omega_r) {
  detail::require_physical(e, "weak_coupling_depth");
  detail::require_positive(omega_r, "omega_r", "weak_coupling_depth");
  return 0.5 * std::log(std::abs(e.a1 * e.a2) / (omega_r * omega_r));
}

/// Field-dominated asymptote log(omega_c / omega_r).
inline double field_dominated_depth(double omega_c, double omega_r) {
  detail::require_positive(omega_c, "omega_c", "field_dominated_depth");
  detail::require_positive(omega_r, "omega_r", "field_dominated_depth");
  return std::log(omega_c / omega_r);
}

/// Rough scale of the cross term at strong coupling, sqrt(g/2).
/// Diagnostic only; not an identity.
inline double strong_coupling_scale(double g) {
  detail::require_positive(g, "g", "strong_coupling_scale");
  return std::sqrt(0.5 * g);
}

/// Complete-synchronization measure
///   S_c = 1 / (<(x1 - x2)^2> + <(p1 - p2)^2>)
/// from central moments (all states here have vanishing means).
inline double synchronization(const CovarianceMatrix& sigma) {
  detail::require_symmetric(sigma, "synchronization");
  const double dx = sigma(0, 0) + sigma(2, 2) - 2.0 * sigma(0, 2);
  const double dp = sigma(1, 1) + sigma(3, 3) - 2.0 * sigma(1, 3);
  const double denom = dx + dp;
  if (!(denom > 0.0))
    detail::fail("synchronization: nonpositive denominator " + detail::fmt(denom));
  return 1.0 / denom;
}

/// Mutual information I(1:2) = S(1) + S(2) - S(12), nats. Floating-point
/// negatives above -1e-10 clamp to 0; anything lower is rejected.
inline double mutual_information(const CovarianceMatrix& sigma) {
  const double s1 = mode_entropy(sigma, ModeSubset::mode1);
  const double s2 = mode_entropy(sigma, ModeSubset::mode2);
  const double s12 = mode_entropy(sigma, ModeSubset::both);
  double mi = s1 + s2 - s12;
  if (mi < 0.0) {
    if (mi < -1e-10)
      detail::fail("mutual_information: negative beyond tolerance, I = " + detail::fmt(mi));
    mi = 0.0;
  }
  return mi;
}

/// Standard Pearson correlation of two equal-length sequences.
template <typename DerivedA, typename DerivedB>
double pearson(const Eigen::MatrixBase<DerivedA>& a,
               const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size())
    detail::fail("pearson: length mismatch, " + std::to_string(a.size()) +
                 " vs " + std::to_string(b.size()));
  if (a.size() < 2) detail::fail("pearson: need at least 2 samples");
  const Eigen::VectorXd x = a.derived().reshaped().template cast<double>();
  const Eigen::VectorXd y = b.derived().reshaped().template cast<double>();
  const Eigen::ArrayXd cx = x.array() - x.mean();
  const Eigen::ArrayXd cy = y.array() - y.mean();
  const double va = (cx * cx).sum();
  const double vb = (cy * cy).sum();
  if (!(va > 0.0) || !(vb > 0.0)) detail::fail("pearson: zero-variance input");
  return (cx * cy).sum() / std::sqrt(va * vb);
}

/// Scaling gate on one mode: x_mode -> e^{eps} x_mode in the wavefunction
/// argument, so A_mode -> e^{2 eps} A_mode and A12 -> e^{eps} A12.
inline GaussianExponent apply_scaling_gate(const GaussianExponent& e, int mode,
                                           double epsilon) {
  if (mode != 1 && mode != 2)
    detail::fail("apply_scaling_gate: mode must be 1 or 2, got " + std::to_string(mode));
  GaussianExponent out = e;
  const double s = std::exp(epsilon);
  if (mode == 1)
    out.a1 *= s * s;
  else
    out.a2 *= s * s;
  out.a12 *= s;
  return out;
}

/// Entangling gate: x_target -> x_target + eps * x_source. Substituting in the
/// Gaussian argument updates the source diagonal coefficient and the cross
/// term; the target coefficient is unchanged:
///   A_source += eps^2 A_target - eps A12,  A12 -= 2 eps A_target.
inline GaussianExponent apply_entangling_gate(const GaussianExponent& e,
                                              int target, int source,
                                              double epsilon) {
  if ((target != 1 && target != 2) || (source != 1 && source != 2) || target == source)
    detail::fail("apply_entangling_gate: target/source must be distinct modes in {1, 2}");
  GaussianExponent out = e;
  const Complex at = target == 1 ? e.a1 : e.a2;
  Complex& as = target == 1 ? out.a2 : out.a1;
  as += epsilon * epsilon * at - epsilon * e.a12;
  out.a12 -= 2.0 * epsilon * at;
  return out;
}

}  // namespace oscinfo
