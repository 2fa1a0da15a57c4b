#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "siegel/basis.hpp"
#include "siegel/reduction.hpp"

namespace siegel {

/// Identifies a reproducible random substream.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// mt19937_64 keyed by (seed, stream) through std::seed_seq, whose mixing
/// algorithm is fixed by the standard. Each stream is an independent engine,
/// so parallel workers never share state.
class Rng {
 public:
  explicit Rng(RngSeed key) {
    std::seed_seq seq{static_cast<std::uint32_t>(key.seed),
                      static_cast<std::uint32_t>(key.seed >> 32),
                      static_cast<std::uint32_t>(key.stream),
                      static_cast<std::uint32_t>(key.stream >> 32), 0x51e9e1u};
    engine_.seed(seq);
  }

  /// Uniform on [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  /// Uniform on (0, 1].
  double uniform_positive() { return 1.0 - uniform(); }
  double normal() { return normal_(engine_); }
  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Modulus of the Hecke construction below (the Mersenne prime 2^31 - 1).
inline constexpr std::int64_t kHeckePrime = 2147483647;

/// Random covolume-1 lattice, approximately distributed by the invariant
/// probability measure mu_n. Uses Goldstein–Mayer lattices: the rows
/// p e_1 and x_i e_1 + e_i (i = 2..n) with x_i uniform mod the prime p.
/// These equidistribute to mu_n as p grows; at p = 2^31 - 1 the bias is far
/// below Monte Carlo noise at any sample size used here. The integer basis
/// is LLL-reduced exactly (integral row operations on doubles below 2^53),
/// then scaled by p^{-1/n}. The returned basis has positive determinant.
inline Basis sample_unimodular_lattice(int n, Rng& rng) {
  if (n < 2) throw InvalidArgument("lattice dimension must be at least 2");
  Matrix x = Matrix::Identity(n, n);
  x(0, 0) = static_cast<double>(kHeckePrime);
  for (int i = 1; i < n; ++i) x(i, 0) = static_cast<double>(rng.integer(0, kHeckePrime - 1));
  detail::lll_in_place(x, kDefaultDelta);
  x *= std::pow(static_cast<double>(kHeckePrime), -1.0 / n);
  return Basis(std::move(x));
}

inline Basis sample_unimodular_lattice(int n, RngSeed key) {
  Rng rng(key);
  return sample_unimodular_lattice(n, rng);
}

/// Product of `steps` random elementary integer operations: add +-k times
/// row j to row i (k uniform in 1..5), or, with probability 1/8, swap two
/// rows and negate one of them. Every factor has determinant +1.
inline Matrix random_unimodular(int n, int steps, Rng& rng) {
  if (steps < 0) throw InvalidArgument("scramble steps must be non-negative");
  Matrix u = Matrix::Identity(n, n);
  if (n < 2) return u;
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<Eigen::Index>(rng.integer(0, n - 1));
    auto j = static_cast<Eigen::Index>(rng.integer(0, n - 2));
    if (j >= i) ++j;
    if (rng.integer(0, 7) == 0) {
      u.row(i).swap(u.row(j));
      u.row(i) *= -1.0;
    } else {
      const double k = static_cast<double>(rng.integer(1, 5)) * (rng.integer(0, 1) ? 1.0 : -1.0);
      u.row(i) += k * u.row(j);
    }
  }
  if (u.cwiseAbs().maxCoeff() > 0x1p52) {
    throw CapacityExceeded("scramble entries exceed exact double range; use fewer steps");
  }
  return u;
}

/// Same lattice, new basis U * rows with U from random_unimodular.
inline Basis scramble_basis(const Basis& basis, int steps, Rng& rng) {
  if (steps == 0) return basis;
  return Basis(random_unimodular(basis.dim(), steps, rng) * basis.rows());
}

/// GSO profile of a random point of the Siegel set.
struct SiegelProfile {
  std::vector<double> alpha;  // alpha_i = a_i / a_{i+1}, i = 1..n-1
  std::vector<double> norms;  // a_1..a_n with prod a_i = 1
  double log_ratio = 0.0;     // log(a_n / T^{(n-1)/2}), always <= 0

  double ratio() const { return std::exp(log_ratio); }
  double last_norm() const { return norms.back(); }
};

/// Draws the alpha_i independently with density proportional to
/// alpha^{-i(n-i)} dalpha/alpha on [1/T, inf) by inversion:
/// alpha_i = T^{-1} u^{-1/(i(n-i))}. Then a_n^{-n} = prod alpha_i^i.
inline SiegelProfile sample_siegel_gso(int n, double T, Rng& rng) {
  if (n < 2) throw InvalidArgument("dimension must be at least 2");
  if (!(T > 1.0)) throw InvalidArgument("Siegel parameter T must exceed 1");
  const double log_t = std::log(T);
  std::vector<double> log_alpha(n - 1);
  double log_an = 0.0;
  for (int i = 1; i < n; ++i) {
    const double rate = static_cast<double>(i) * (n - i);
    log_alpha[i - 1] = -log_t - std::log(rng.uniform_positive()) / rate;
    log_an -= static_cast<double>(i) / n * log_alpha[i - 1];
  }
  SiegelProfile p;
  p.alpha.resize(n - 1);
  p.norms.resize(n);
  double log_a = log_an;
  p.norms[n - 1] = std::exp(log_an);
  for (int i = n - 2; i >= 0; --i) {
    log_a += log_alpha[i];
    p.norms[i] = std::exp(log_a);
    p.alpha[i] = std::exp(log_alpha[i]);
  }
  p.log_ratio = log_an - 0.5 * (n - 1) * log_t;
  return p;
}

}  // namespace siegel
