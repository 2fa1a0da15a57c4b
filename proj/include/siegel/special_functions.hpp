#pragma once

// Riemann zeta, log-Gamma, Gamma_R and the completed zeta xi on the complex
// plane in double precision.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "siegel/errors.hpp"

namespace siegel {

using Complex = std::complex<double>;

namespace detail {

inline constexpr double kPoleGuard = 1e-12;

// B_2, B_4, ..., B_30.
inline constexpr std::array<double, 15> kBernoulli = {
    1.0 / 6,           -1.0 / 30,         1.0 / 42,
    -1.0 / 30,         5.0 / 66,          -691.0 / 2730,
    7.0 / 6,           -3617.0 / 510,     43867.0 / 798,
    -174611.0 / 330,   854513.0 / 138,    -236364091.0 / 2730,
    8553103.0 / 6,     -23749461029.0 / 870, 8615841276005.0 / 14322};

inline bool near_integer(Complex z, double& k) {
  k = std::round(z.real());
  return std::abs(z.imag()) < kPoleGuard && std::abs(z.real() - k) < kPoleGuard;
}

// Euler–Maclaurin with cutoff N and 15 correction terms. The tail ratio is
// about |s + 30|^2 / (2 pi N)^2, so N >= max(50, |s|) keeps it below 0.07.
inline Complex zeta_euler_maclaurin(Complex s) {
  const int n = std::max(50, static_cast<int>(std::ceil(std::abs(s))));
  Complex sum = 0.0;
  for (int k = n - 1; k >= 1; --k) sum += std::exp(-s * std::log(static_cast<double>(k)));
  const double logn = std::log(static_cast<double>(n));
  const Complex n_pow = std::exp(-s * logn);
  sum += n_pow * static_cast<double>(n) / (s - 1.0) + 0.5 * n_pow;
  Complex rising = s;
  Complex power = n_pow / static_cast<double>(n);
  double factorial = 2.0;
  const double n2 = static_cast<double>(n) * n;
  for (std::size_t j = 0; j < kBernoulli.size(); ++j) {
    sum += kBernoulli[j] / factorial * rising * power;
    const double a = 2.0 * j + 1.0;
    rising *= (s + a) * (s + a + 1.0);
    power /= n2;
    factorial *= (a + 2.0) * (a + 3.0);
  }
  return sum;
}

}  // namespace detail

/// A logarithm of Gamma(z) (branch unspecified; exp of it is Gamma(z)).
/// Stirling series after shifting |z| >= 15, reflection for Re z < 1/2.
inline Complex log_gamma(Complex z) {
  double k;
  if (z.real() <= 0.5 && detail::near_integer(z, k) && k <= 0) {
    throw PoleError("Gamma has a pole at a non-positive integer");
  }
  constexpr double pi = std::numbers::pi;
  if (z.real() < 0.5) {
    return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
  }
  Complex shift = 0.0;
  while (std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  static constexpr std::array<double, 10> stirling = {
      1.0 / 12,      -1.0 / 360,          1.0 / 1260,     -1.0 / 1680,
      1.0 / 1188,    -691.0 / 360360,     1.0 / 156,      -3617.0 / 122400,
      43867.0 / 244188, -174611.0 / 125400};
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex p = inv;
  for (double c : stirling) {
    series += c * p;
    p *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + series - shift;
}

/// Riemann zeta. Reflection through the functional equation for Re s < 1/2.
inline Complex zeta(Complex s) {
  if (std::abs(s - 1.0) < detail::kPoleGuard) throw PoleError("zeta has a pole at s = 1");
  if (s.real() >= 0.5) return detail::zeta_euler_maclaurin(s);
  if (std::abs(s) < detail::kPoleGuard) return -0.5;
  constexpr double pi = std::numbers::pi;
  double k;
  // Trivial zeros, where Gamma(1 - s) stays finite and sin vanishes exactly.
  if (detail::near_integer(s, k) && k < 0 && static_cast<long long>(k) % 2 == 0) return 0.0;
  const Complex log_factor = s * std::log(2.0) + (s - 1.0) * std::log(pi) + log_gamma(1.0 - s);
  return std::exp(log_factor) * std::sin(0.5 * pi * s) * detail::zeta_euler_maclaurin(1.0 - s);
}

/// Gamma_R(s) = pi^{-s/2} Gamma(s/2).
inline Complex gamma_r(Complex s) {
  double k;
  if (detail::near_integer(0.5 * s, k) && k <= 0) {
    throw PoleError("Gamma_R has a pole at a non-positive even integer");
  }
  return std::exp(-0.5 * s * std::log(std::numbers::pi) + log_gamma(0.5 * s));
}

/// Completed zeta xi(s) = Gamma_R(s) zeta(s), with simple poles at 0 and 1.
inline Complex xi(Complex s) {
  if (std::abs(s) < detail::kPoleGuard || std::abs(s - 1.0) < detail::kPoleGuard) {
    throw PoleError("xi has poles at s = 0 and s = 1");
  }
  double k;
  // Gamma_R(s) zeta(s) is 0 * inf at the trivial zeros.
  if (detail::near_integer(0.5 * s, k) && k < 0) return gamma_r(1.0 - s) * zeta(1.0 - s);
  return gamma_r(s) * zeta(s);
}

/// q(z) = min(10 |z|, 1).
inline double q_regularizer(Complex z) { return std::min(10.0 * std::abs(z), 1.0); }

/// xi_q(s) = q(s - 1) xi(s). Near s = 1 its modulus tends to 10; at s = 1
/// itself the limit along the real axis from the right, 10, is returned.
inline Complex xi_q(Complex s) {
  if (std::abs(s - 1.0) < detail::kPoleGuard) return 10.0;
  return q_regularizer(s - 1.0) * xi(s);
}

}  // namespace siegel
