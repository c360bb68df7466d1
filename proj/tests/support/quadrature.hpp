#pragma once

// Brute-force moment oracle for two-mode Gaussian exponents, independent of
// the library's moment formulas: tensor Gauss-Legendre quadrature over the
// wavefunction, momentum moments via finite-difference derivatives of psi.
// Used to pin exponent_to_covariance and everything downstream of it.

#include <oscinfo/gaussian.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace oracle {

struct GaussLegendre {
  Eigen::VectorXd x, w;
};

// Nodes/weights on [-1, 1] by Newton iteration on P_n.
inline GaussLegendre gauss_legendre(int n) {
  GaussLegendre r;
  r.x.resize(n);
  r.w.resize(n);
  const auto legendre_pair = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return std::pair<double, double>{p1, dp};
  };
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 64; ++it) {
      const auto [p, dp] = legendre_pair(x);
      const double step = p / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    const auto [p, dp] = legendre_pair(x);
    r.x(i) = x;
    r.w(i) = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

// Covariance in (x1, p1, x2, p2) ordering by direct integration:
//   <x_a x_b> from |psi|^2,
//   <p_a p_b>_sym = Re Int (d_a psi)* (d_b psi),
//   <x_a p_b>_sym = Im Int psi* x_a (d_b psi),
// derivatives via central differences with step eta.
inline Eigen::Matrix4d covariance_by_quadrature(const oscinfo::GaussianExponent& e,
                                                int n = 140, double eta = 5e-6) {
  using oscinfo::Complex;
  const double r1 = e.a1.real(), r2 = e.a2.real(), r12 = e.a12.real();
  // smallest eigenvalue of the real form matrix sets the widest direction
  const double mean = 0.5 * (r1 + r2);
  const double lam_min = mean - std::sqrt(0.25 * (r1 - r2) * (r1 - r2) + 0.25 * r12 * r12);
  const double box = 7.5 / std::sqrt(2.0 * lam_min);

  const GaussLegendre gl = gauss_legendre(n);
  const auto psi = [&](double x, double y) {
    return std::exp(-0.5 * (e.a1 * x * x + e.a2 * y * y - e.a12 * x * y));
  };

  double norm = 0.0;
  Eigen::Matrix2d sx = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d sp = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d sxp = Eigen::Matrix2d::Zero();
  for (int i = 0; i < n; ++i) {
    const double x = box * gl.x(i);
    for (int j = 0; j < n; ++j) {
      const double y = box * gl.x(j);
      const double w = box * box * gl.w(i) * gl.w(j);
      const Complex p = psi(x, y);
      const Complex dx = (psi(x + eta, y) - psi(x - eta, y)) / (2.0 * eta);
      const Complex dy = (psi(x, y + eta) - psi(x, y - eta)) / (2.0 * eta);
      const double rho = std::norm(p);
      norm += w * rho;
      sx(0, 0) += w * x * x * rho;
      sx(0, 1) += w * x * y * rho;
      sx(1, 1) += w * y * y * rho;
      sp(0, 0) += w * std::norm(dx);
      sp(0, 1) += w * (std::conj(dx) * dy).real();
      sp(1, 1) += w * std::norm(dy);
      sxp(0, 0) += w * (std::conj(p) * x * dx).imag();
      sxp(0, 1) += w * (std::conj(p) * x * dy).imag();
      sxp(1, 0) += w * (std::conj(p) * y * dx).imag();
      sxp(1, 1) += w * (std::conj(p) * y * dy).imag();
    }
  }
  sx(1, 0) = sx(0, 1);
  sp(1, 0) = sp(0, 1);
  sx /= norm;
  sp /= norm;
  sxp /= norm;

  Eigen::Matrix4d sigma;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      sigma(2 * a, 2 * b) = sx(a, b);
      sigma(2 * a + 1, 2 * b + 1) = sp(a, b);
      sigma(2 * a, 2 * b + 1) = sxp(a, b);
      sigma(2 * b + 1, 2 * a) = sxp(a, b);
    }
  return sigma;
}

// Random normalizable exponent with comfortable positive-definiteness margin.
inline oscinfo::GaussianExponent random_exponent(std::mt19937& rng) {
  std::uniform_real_distribution<double> re(0.6, 2.5);
  std::uniform_real_distribution<double> frac(-0.9, 0.9);
  std::uniform_real_distribution<double> im(-1.0, 1.0);
  const double r1 = re(rng), r2 = re(rng);
  const double r12 = frac(rng) * 0.6 * std::sqrt(4.0 * r1 * r2);
  return {{r1, im(rng)}, {r2, im(rng)}, {r12, im(rng)}};
}

}  // namespace oracle
