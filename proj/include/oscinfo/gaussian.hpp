#pragma once

// Two-mode Gaussian pure states in exponent form and their second moments.
//
// Conventions used throughout the library:
//   hbar = 1, quadrature ordering (x1, p1, x2, p2), vacuum variance 1/2,
//   entropies in nats.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>

namespace oscinfo {

using Complex = std::complex<double>;
using CovarianceMatrix = Eigen::Matrix4d;

// Symplectic eigenvalues sorted in descending order.
using SymplecticSpectrum = Eigen::Vector2d;

// Wavefunction psi(x1, x2) ~ N * exp(-(a1 x1^2 + a2 x2^2 - a12 x1 x2) / 2).
// Normalizable states need Re a1 > 0, Re a2 > 0 and
// 4 Re(a1) Re(a2) - Re(a12)^2 > 0.
struct GaussianExponent {
  Complex a1{1.0, 0.0};
  Complex a2{1.0, 0.0};
  Complex a12{0.0, 0.0};
};

enum class ModeSubset { mode1, mode2, both };

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

[[noreturn]] inline void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

inline void require_positive(double v, const char* name, const char* where) {
  if (!(v > 0.0))
    fail(std::string(where) + ": " + name + " must be positive, got " + fmt(v));
}

inline void require_nonnegative(double v, const char* name, const char* where) {
  if (!(v >= 0.0))
    fail(std::string(where) + ": " + name + " must be >= 0, got " + fmt(v));
}

inline void require_symmetric(const Eigen::Ref<const Eigen::MatrixXd>& m,
                              const char* where) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double skew = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (skew > 1e-10 * scale)
    fail(std::string(where) + ": matrix not symmetric, max asymmetry " + fmt(skew));
}

// Locate `time` on a stored grid; rejects off-grid queries.
inline Eigen::Index grid_index(const Eigen::VectorXd& t, double time,
                               const char* where) {
  const double tol = 1e-9 * (1.0 + std::abs(time));
  const double* begin = t.data();
  const double* end = begin + t.size();
  const double* it = std::lower_bound(begin, end, time - tol);
  if (it != end && std::abs(*it - time) <= tol) return it - begin;
  fail(std::string(where) + ": t = " + fmt(time) + " is not a grid point");
}

}  // namespace detail

inline bool exponent_is_physical(const GaussianExponent& e) {
  const double r1 = e.a1.real(), r2 = e.a2.real(), r12 = e.a12.real();
  return r1 > 0.0 && r2 > 0.0 && 4.0 * r1 * r2 - r12 * r12 > 0.0;
}

namespace detail {

inline void require_physical(const GaussianExponent& e, const char* where) {
  if (!exponent_is_physical(e))
    fail(std::string(where) + ": non-normalizable exponent, Re a1 = " +
         fmt(e.a1.real()) + ", Re a2 = " + fmt(e.a2.real()) +
         ", Re a12 = " + fmt(e.a12.real()));
}

}  // namespace detail

/// Second moments of the normalized state described by `e`.
///
/// With M = [[a1, -a12/2], [-a12/2, a2]] = R + iJ the blocks are
///   <x x^T> = R^{-1} / 2,
///   <p p^T>_sym = (R + J R^{-1} J) / 2,
///   <x p^T>_sym = -R^{-1} J / 2,
/// assembled in (x1, p1, x2, p2) ordering.
inline CovarianceMatrix exponent_to_covariance(const GaussianExponent& e) {
  detail::require_physical(e, "exponent_to_covariance");
  Eigen::Matrix2d r, j;
  r << e.a1.real(), -0.5 * e.a12.real(), -0.5 * e.a12.real(), e.a2.real();
  j << e.a1.imag(), -0.5 * e.a12.imag(), -0.5 * e.a12.imag(), e.a2.imag();
  const Eigen::Matrix2d ri = r.inverse();
  const Eigen::Matrix2d sx = 0.5 * ri;
  const Eigen::Matrix2d sp = 0.5 * r + 0.5 * j * ri * j;
  const Eigen::Matrix2d sxp = -0.5 * ri * j;  // rows: x_a, cols: p_b
  CovarianceMatrix sigma;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      sigma(2 * a, 2 * b) = sx(a, b);
      sigma(2 * a + 1, 2 * b + 1) = sp(a, b);
      sigma(2 * a, 2 * b + 1) = sxp(a, b);
      sigma(2 * b + 1, 2 * a) = sxp(a, b);
    }
  return sigma;
}

inline Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = 1.0;
  omega(1, 0) = -1.0;
  omega(2, 3) = 1.0;
  omega(3, 2) = -1.0;
  return omega;
}

/// Symplectic eigenvalues of a two-mode covariance matrix: moduli of the
/// eigenvalues of i*Omega*sigma, which come in +/- pairs.
inline SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& sigma) {
  detail::require_symmetric(sigma, "symplectic_eigenvalues");
  const Eigen::EigenSolver<Eigen::Matrix4d> solver(symplectic_form() * sigma, false);
  Eigen::Vector4d mods = solver.eigenvalues().cwiseAbs();
  std::sort(mods.data(), mods.data() + 4, std::greater<>());
  return {mods(0), mods(2)};
}

/// Entropy of a thermal mode with symplectic eigenvalue nu, in nats:
/// f(nu) = (nu + 1/2) ln(nu + 1/2) - (nu - 1/2) ln(nu - 1/2).
/// Returns 0 for nu <= 1/2. Near-pure values (nu - 1/2 < 1e-6) use the series
/// d - d ln d + d^2/2 to avoid cancellation.
inline double symplectic_entropy(double nu) {
  const double d = nu - 0.5;
  if (d <= 0.0) return 0.0;
  if (d < 1e-6) return d - d * std::log(d) + 0.5 * d * d;
  return (nu + 0.5) * std::log(nu + 0.5) - d * std::log(d);
}

/// Von Neumann entropy of the chosen subsystem of a two-mode Gaussian state.
/// Single-mode reductions use nu = sqrt(det sigma_red); the full state uses
/// both symplectic eigenvalues. Eigenvalues below 1/2 - 1e-9 are rejected as
/// unphysical.
inline double mode_entropy(const CovarianceMatrix& sigma, ModeSubset subset) {
  detail::require_symmetric(sigma, "mode_entropy");
  constexpr double nu_floor = 0.5 - 1e-9;
  const auto single = [&](int origin) {
    const double det = sigma.block<2, 2>(origin, origin).determinant();
    const double nu = det > 0.0 ? std::sqrt(det) : 0.0;
    if (nu < nu_floor)
      detail::fail("mode_entropy: unphysical reduced state, nu = " + detail::fmt(nu));
    return symplectic_entropy(nu);
  };
  switch (subset) {
    case ModeSubset::mode1:
      return single(0);
    case ModeSubset::mode2:
      return single(2);
    case ModeSubset::both: {
      const SymplecticSpectrum nu = symplectic_eigenvalues(sigma);
      if (nu(1) < nu_floor)
        detail::fail("mode_entropy: unphysical state, nu_min = " + detail::fmt(nu(1)));
      return symplectic_entropy(nu(0)) + symplectic_entropy(nu(1));
    }
  }
  detail::fail("mode_entropy: invalid subset");
}

/// Geodesic complexity (1/4) tr log^2(G_T G_R^{-1}) between centered Gaussians
/// with covariance matrices `target` and `reference` of equal size. Computed
/// through the symmetric product G_R^{-1/2} G_T G_R^{-1/2}, whose eigenvalues
/// equal those of G_T G_R^{-1}.
template <typename DerivedT, typename DerivedR>
double geodesic_complexity(const Eigen::MatrixBase<DerivedT>& target,
                           const Eigen::MatrixBase<DerivedR>& reference) {
  const Eigen::MatrixXd gt = target.derived();
  const Eigen::MatrixXd gr = reference.derived();
  if (gt.rows() != gt.cols() || gr.rows() != gr.cols() || gt.rows() != gr.rows())
    detail::fail("geodesic_complexity: need square matrices of equal size, got " +
                 std::to_string(gt.rows()) + "x" + std::to_string(gt.cols()) +
                 " and " + std::to_string(gr.rows()) + "x" + std::to_string(gr.cols()));
  detail::require_symmetric(gt, "geodesic_complexity (target)");
  detail::require_symmetric(gr, "geodesic_complexity (reference)");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(gr);
  if (!(ref.eigenvalues().minCoeff() > 0.0))
    detail::fail("geodesic_complexity: reference covariance is singular, min eigenvalue " +
                 detail::fmt(ref.eigenvalues().minCoeff()));
  const Eigen::MatrixXd w = ref.operatorInverseSqrt();
  const Eigen::MatrixXd prod = w * gt * w;
  const Eigen::MatrixXd sym = 0.5 * (prod + prod.transpose());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sys(sym);
  double total = 0.0;
  for (Eigen::Index i = 0; i < sys.eigenvalues().size(); ++i) {
    const double lam = sys.eigenvalues()(i);
    if (!(lam > 0.0))
      detail::fail("geodesic_complexity: target covariance not positive definite, eigenvalue " +
                   detail::fmt(lam));
    const double l = std::log(lam);
    total += l * l;
  }
  return 0.25 * total;
}

}  // namespace oscinfo
