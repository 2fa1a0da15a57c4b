#pragma once

// Block products of xi-ratios and the Borel and degenerate constant terms.
//
// Products are written against an evaluator e(epsilon, h2) that returns
// xi(epsilon z + h2/2) for a fixed z. DirectXi calls xi; XiShiftTable
// precomputes every value an exhaustive sweep at that z can ask for.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "siegel/combinatorics.hpp"
#include "siegel/special_functions.hpp"

namespace siegel {

struct DirectXi {
  Complex z;
  Complex operator()(int epsilon, int h2) const {
    return xi(static_cast<double>(epsilon) * z + 0.5 * h2);
  }
};

class XiShiftTable {
 public:
  /// Covers |h2| <= max_h2 for both signs of z.
  XiShiftTable(Complex z, int max_h2) : max_h2_(max_h2) {
    for (int eps : {1, -1}) {
      for (int h2 = -max_h2; h2 <= max_h2; ++h2) {
        values_.push_back(xi(static_cast<double>(eps) * z + 0.5 * h2));
      }
    }
  }

  Complex operator()(int epsilon, int h2) const {
    if (std::abs(h2) > max_h2_) throw InvalidArgument("shift outside the xi table");
    const int width = 2 * max_h2_ + 1;
    return values_[(epsilon == 1 ? 0 : width) + h2 + max_h2_];
  }

 private:
  int max_h2_;
  std::vector<Complex> values_;
};

/// prod over b in B, c in C with sigma(b) > sigma(c) of xi(z + b - c) / xi(z + b - c + 1).
template <class Eval>
Complex block_product_raw(const LeviShape& shape, const Permutation& sigma, int B, int C,
                          const Eval& eval) {
  if (!(B < C)) throw OrderViolation();
  Complex num = 1.0, den = 1.0;
  for (int pb = 0; pb < shape.size(B); ++pb) {
    const int pos_b = shape.start(B) + pb + 1;
    for (int pc = 0; pc < shape.size(C); ++pc) {
      const int pos_c = shape.start(C) + pc + 1;
      if (sigma[pos_b - 1] < sigma[pos_c - 1]) continue;
      const int h2 = shape.label2(pos_b) - shape.label2(pos_c);
      try {
        num *= eval(1, h2);
        den *= eval(1, h2 + 2);
      } catch (const PoleError&) {
        throw PoleError("block product hits a pole at b = " + std::to_string(0.5 * shape.label2(pos_b)) +
                        ", c = " + std::to_string(0.5 * shape.label2(pos_c)));
      }
    }
  }
  return num / den;
}

inline Complex block_product_raw(const LeviShape& shape, const Permutation& sigma, int B, int C,
                                 Complex z) {
  return block_product_raw(shape, sigma, B, C, DirectXi{z});
}

/// prod of xi(epsilon z + m) / xi(z + m + j) over the factors.
template <class Eval>
Complex block_product_factored(const BlockIntertwining& bi, const Eval& eval) {
  Complex num = 1.0, den = 1.0;
  for (const auto& f : bi.factors) {
    num *= eval(f.epsilon, f.m2);
    den *= eval(1, f.m2 + f.j2);
  }
  return num / den;
}

inline Complex block_product_factored(const BlockIntertwining& bi, Complex z) {
  return block_product_factored(bi, DirectXi{z});
}

namespace detail {

// a^chi = prod alpha_i^{mu_i(chi)} for chi given in nu-coordinates.
inline Complex torus_power(const std::vector<double>& alpha, const std::vector<Complex>& nu) {
  Complex log_value = 0.0, mu = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    mu += nu[i];
    log_value += mu * std::log(alpha[i]);
  }
  return std::exp(log_value);
}

inline void check_profile(int n, const std::vector<double>& alpha) {
  if (n < 2 || n > 6) throw InvalidArgument("constant terms are evaluated for 2 <= n <= 6");
  if (static_cast<int>(alpha.size()) != n - 1) throw InvalidArgument("need n - 1 ratios alpha_i");
  for (double a : alpha) {
    if (!(a > 0.0)) throw InvalidArgument("ratios alpha_i must be positive");
  }
}

}  // namespace detail

/// sum over sigma in S_n of a^{sigma nu + rho} prod_{i<j, sigma(i)>sigma(j)} xi(nu_ij) / xi(nu_ij + 1).
inline Complex borel_constant_term(const CharacterCoords& nu, const std::vector<double>& alpha) {
  const int n = nu.dim();
  detail::check_profile(n, alpha);
  const auto rho_nu = rho(n).rho.nu;
  Permutation sigma(n);
  std::iota(sigma.begin(), sigma.end(), 1);
  Complex total = 0.0;
  do {
    Complex coeff = 1.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (sigma[i] < sigma[j]) continue;
        const Complex d = nu.nu[i] - nu.nu[j];
        coeff *= xi(d) / xi(d + 1.0);
      }
    }
    auto chi = permute_nu(sigma, nu.nu);
    for (int i = 0; i < n; ++i) chi[i] += rho_nu[i];
    total += coeff * detail::torus_power(alpha, chi);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

/// sum over sigma in S[M] of prod_{A<B} (block product at z = nu_A - nu_B) a^{sigma upsilon + rho},
/// with upsilon = shifted_upsilon(shape, nu) and the block products in factored form.
inline Complex degenerate_constant_term(const LeviShape& shape, const std::vector<Complex>& nu,
                                        const std::vector<double>& alpha) {
  const int n = shape.n();
  detail::check_profile(n, alpha);
  const auto upsilon = shifted_upsilon(shape, nu);
  const auto rho_nu = rho(n).rho.nu;
  Complex total = 0.0;
  for_each_levi_permutation(shape, [&](const Permutation& sigma) {
    Complex coeff = 1.0;
    for (int a = 0; a < shape.blocks(); ++a) {
      for (int b = a + 1; b < shape.blocks(); ++b) {
        coeff *= block_product_factored(block_intertwining_factors(shape, sigma, a, b), nu[a] - nu[b]);
      }
    }
    auto chi = permute_nu(sigma, upsilon);
    for (int i = 0; i < n; ++i) chi[i] += rho_nu[i];
    total += coeff * detail::torus_power(alpha, chi);
  });
  return total;
}

}  // namespace siegel
