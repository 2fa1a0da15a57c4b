#pragma once

// Closed-form means over random lattices: the reduced-basis count, the last
// Gram–Schmidt norm, and the volume of SL_n(Z)\SL_n(R).

#include <cmath>
#include <numbers>
#include <vector>

#include "siegel/combinatorics.hpp"
#include "siegel/errors.hpp"
#include "siegel/special_functions.hpp"

namespace siegel {

/// log T^{sum mu_i} / prod mu_i.
inline double log_mellin_indicator(const std::vector<double>& mu, double T) {
  if (!(T > 0.0)) throw InvalidArgument("T must be positive");
  double s = 0.0;
  for (double m : mu) {
    if (!(m > 0.0)) throw InvalidArgument("exponents mu_i must be positive");
    s += m * std::log(T) - std::log(m);
  }
  return s;
}

/// Integral of the indicator of {alpha_i >= 1/T} against a^{-mu} da / a,
/// namely T^{sum mu_i} / prod mu_i.
inline double mellin_indicator(const std::vector<double>& mu, double T) {
  return std::exp(log_mellin_indicator(mu, T));
}

/// log xi(k) for an integer k >= 2.
inline double log_xi_integer(int k) {
  if (k < 2) throw InvalidArgument("need k >= 2");
  const double s = k;
  return -0.5 * s * std::log(std::numbers::pi) + std::lgamma(0.5 * s) + std::log(zeta(s).real());
}

/// log Q_n with Q_n = xi(2) xi(3) ... xi(n).
inline double log_xi_product(int n) {
  double s = 0.0;
  for (int k = 2; k <= n; ++k) s += log_xi_integer(k);
  return s;
}

inline double log_quotient_volume(int n) {
  if (n < 2) throw InvalidArgument("dimension must be at least 2");
  return std::log(static_cast<double>(n)) - (n - 1) * std::log(2.0) + log_xi_product(n);
}

/// (n / 2^{n-1}) xi(2) ... xi(n).
inline double quotient_volume(int n) { return std::exp(log_quotient_volume(n)); }

struct TheoryReport {
  int n = 0;
  double T = 0.0;
  double mean_ef = 0.0;         // mean of the pseudo-Eisenstein series E_f
  double mean_count = 0.0;      // mean of N(L) = 2^{n-1} E_f; inf once it overflows
  double mean_count_log = 0.0;  // log of mean_count, always finite
  double mean_an = 0.0;         // mean of a_n over reduced bases
  double volume = 0.0;
};

/// log of the mean of E_f: (n^3 - n)/6 log T - log n - sum_{i<n} log(i (n - i)) - log Q_n.
inline double log_mean_ef(int n, double T) {
  if (n < 2) throw InvalidArgument("dimension must be at least 2");
  if (!(T >= 1.0)) throw InvalidArgument("T must be at least 1");
  double s = static_cast<double>(weight_two_rho(n)) * std::log(T) - std::log(static_cast<double>(n));
  for (int i = 1; i < n; ++i) s -= std::log(static_cast<double>(i) * (n - i));
  return s - log_xi_product(n);
}

inline double log_mean_reduced_count(int n, double T) {
  return log_mean_ef(n, T) + (n - 1) * std::log(2.0);
}

struct LastNormMean {
  double value = 0.0;  // mean of a_n at covolume 1
  double ratio = 0.0;  // value / T^{(n-1)/2}
};

/// E[alpha_i^{-i/n}] = T^{i/n} / (1 + 1/(n (n - i))), so the mean of
/// a_n = prod alpha_i^{-i/n} is T^{(n-1)/2} prod_{i<n} 1 / (1 + 1/(n (n - i))).
inline LastNormMean mean_last_gso_norm(int n, double T) {
  if (n < 2) throw InvalidArgument("dimension must be at least 2");
  if (!(T >= 1.0)) throw InvalidArgument("T must be at least 1");
  double log_ratio = 0.0;
  for (int i = 1; i < n; ++i) log_ratio -= std::log1p(1.0 / (static_cast<double>(n) * (n - i)));
  const double ratio = std::exp(log_ratio);
  return {ratio * std::pow(T, 0.5 * (n - 1)), ratio};
}

inline TheoryReport mean_reduced_count(int n, double T) {
  TheoryReport r;
  r.n = n;
  r.T = T;
  r.mean_count_log = log_mean_reduced_count(n, T);
  r.mean_count = std::exp(r.mean_count_log);
  r.mean_ef = std::exp(log_mean_ef(n, T));
  r.mean_an = mean_last_gso_norm(n, T).value;
  r.volume = quotient_volume(n);
  return r;
}

/// -H_{n-1} / n, the mean of log(a_n / T^{(n-1)/2}) over the Siegel set.
inline double mean_log_ratio(int n) {
  double h = 0.0;
  for (int k = 1; k < n; ++k) h += 1.0 / k;
  return -h / n;
}

}  // namespace siegel
