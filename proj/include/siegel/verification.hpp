#pragma once

// Exhaustive and grid checks of the combinatorial lemmas, the block-product
// identity and the xi functional equation, shared by the CLI and the tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "siegel/combinatorics.hpp"
#include "siegel/constant_terms.hpp"
#include "siegel/sampling.hpp"
#include "siegel/special_functions.hpp"

namespace siegel {

struct CoreLemmaSweep {
  std::int64_t pairs = 0;
  std::int64_t maps = 0;
  std::int64_t violations = 0;
  std::int64_t modification_failures = 0;

  bool passed() const { return violations == 0 && modification_failures == 0; }
};

/// verify_core_lemma and verify_modification_lemma for all 1 <= n_B <= n_C <= max_size.
inline CoreLemmaSweep sweep_core_lemma(int max_size) {
  CoreLemmaSweep s;
  for (int nc = 1; nc <= max_size; ++nc) {
    for (int nb = 1; nb <= nc; ++nb) {
      const auto r = verify_core_lemma(nb, nc);
      ++s.pairs;
      s.maps += r.maps;
      s.violations += r.count_violations + r.r_violations + r.equality_mismatches;
      s.modification_failures += verify_modification_lemma(nb, nc);
    }
  }
  return s;
}

struct WeightSweep {
  std::int64_t divisions = 0;
  std::int64_t bound_a_failures = 0;
  std::int64_t bound_b_failures = 0;
  std::int64_t mu_failures = 0;
  std::int64_t identity_failures = 0;  // wt(2 rho - 2 rho_J) two ways, and wt(2 rho) closed form

  bool passed() const {
    return bound_a_failures == 0 && bound_b_failures == 0 && mu_failures == 0 && identity_failures == 0;
  }
};

/// Weight bounds for every ordered set partition with at least two parts and
/// n <= max_n, plus wt(2 rho) = (n^3 - n)/6 for n <= max_rho_n.
inline WeightSweep sweep_weight_bounds(int max_n, int max_rho_n) {
  WeightSweep s;
  for (int n = 2; n <= max_rho_n; ++n) {
    const std::int64_t nn = n;
    if (weight_two_rho(n) * 6 != nn * nn * nn - nn) ++s.identity_failures;
    const auto wp = weight_and_product(rho(n).two_rho);
    if (std::abs(wp.wt.real() * 6 - static_cast<double>(nn * nn * nn - nn)) > 1e-6) ++s.identity_failures;
  }
  for (int n = 2; n <= max_n; ++n) {
    for_each_division(n, [&](const Division& j) {
      if (j.size() < 2) return;
      ++s.divisions;
      const auto r = check_weight_bounds(j);
      s.bound_a_failures += !r.bound_a_ok;
      s.bound_b_failures += !r.bound_b_ok;
      s.mu_failures += !r.mu_positive_ok;
      std::int64_t cross = 0;
      const auto part = j.part_of();
      for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
          if (part[a] != part[b]) cross += b - a;
      if (cross != r.wt || rho_J(j).wt_difference != r.wt) ++s.identity_failures;
    });
  }
  return s;
}

struct BijectionSweep {
  std::int64_t divisions = 0;
  std::int64_t failures = 0;

  bool passed() const { return failures == 0; }
};

/// division_to_levi_sigma is injective, lands in S[M], inverts correctly,
/// and hits every (good shape, sigma in S[M]) exactly once, for n <= max_n.
inline BijectionSweep sweep_bijection(int max_n) {
  BijectionSweep s;
  for (int n = 1; n <= max_n; ++n) {
    std::set<std::pair<std::vector<int>, Permutation>> seen;
    std::int64_t good_hits = 0;
    for_each_division(n, [&](const Division& j) {
      ++s.divisions;
      const auto ls = division_to_levi_sigma(j);
      if (!in_levi_coset_set(ls.shape, ls.sigma)) ++s.failures;
      if (!(levi_sigma_to_division(ls.shape, ls.sigma) == j)) ++s.failures;
      if (!seen.insert({ls.shape.parts(), ls.sigma}).second) ++s.failures;
      good_hits += ls.shape.good();
    });
    std::int64_t expected = 0;
    for (const auto& shape : good_shapes(n)) {
      expected += levi_coset_count(shape);
      for_each_levi_permutation(shape, [&](const Permutation& sigma) {
        if (!seen.count({shape.parts(), sigma})) ++s.failures;
      });
    }
    if (expected != good_hits) ++s.failures;
  }
  return s;
}

struct IntertwiningSweep {
  std::int64_t shapes = 0;
  std::int64_t cases = 0;        // (shape, sigma, block pair)
  std::int64_t evaluations = 0;  // cases times points
  std::int64_t invariant_failures = 0;
  double max_relative_error = 0.0;
  std::int64_t unit_cases = 0;  // evaluations of all-j-zero products
  double max_unit_deviation = 0.0;

  bool passed(double tol = 1e-8, double unit_tol = 1e-10) const {
    return invariant_failures == 0 && max_relative_error <= tol && max_unit_deviation <= unit_tol;
  }
};

/// Raw against factored block products for every good shape with
/// 2 <= n <= max_n, every sigma in S[M] and block pair B < C, at `points`
/// random z = it with |t| in [0.1, 10] drawn per shape.
inline IntertwiningSweep sweep_intertwining(int max_n, int points, std::uint64_t seed) {
  IntertwiningSweep s;
  std::uint64_t shape_index = 0;
  for (int n = 2; n <= max_n; ++n) {
    for (const auto& shape : good_shapes(n)) {
      ++s.shapes;
      Rng rng(RngSeed{seed, shape_index++});
      std::vector<XiShiftTable> tables;
      for (int k = 0; k < points; ++k) {
        double t = 0.1 + 9.9 * rng.uniform();
        if (rng.integer(0, 1)) t = -t;
        tables.emplace_back(Complex(0.0, t), 2 * n + 4);
      }
      for_each_levi_permutation(shape, [&](const Permutation& sigma) {
        for (int b = 0; b < shape.blocks(); ++b) {
          for (int c = b + 1; c < shape.blocks(); ++c) {
            ++s.cases;
            const auto bi = block_intertwining_factors(shape, sigma, b, c);
            if (!intertwining_invariants_hold(bi, n)) ++s.invariant_failures;
            const bool all_j_zero =
                !bi.factors.empty() &&
                std::all_of(bi.factors.begin(), bi.factors.end(), [](const auto& f) { return f.j2 == 0; });
            for (const auto& table : tables) {
              const Complex raw = block_product_raw(shape, sigma, b, c, table);
              const Complex fac = block_product_factored(bi, table);
              ++s.evaluations;
              s.max_relative_error = std::max(s.max_relative_error, std::abs(raw - fac) / std::abs(raw));
              if (all_j_zero) {
                ++s.unit_cases;
                s.max_unit_deviation = std::max(s.max_unit_deviation, std::abs(std::abs(fac) - 1.0));
              }
            }
          }
        }
      });
    }
  }
  return s;
}

struct GridReport {
  std::int64_t points = 0;
  double max_error = 0.0;
};

/// 200 points: Re s in 20 steps over [-1, 2], Im s in 10 steps over [-50, 50].
inline std::vector<Complex> functional_equation_grid() {
  std::vector<Complex> out;
  for (int a = 0; a < 20; ++a)
    for (int b = 0; b < 10; ++b) out.emplace_back(-1.0 + 3.0 * a / 19.0, -50.0 + 100.0 * b / 9.0);
  return out;
}

/// max |xi(s) - xi(1 - s)| / |xi(s)| over functional_equation_grid().
inline GridReport check_functional_equation() {
  GridReport r;
  for (const Complex s : functional_equation_grid()) {
    const Complex a = xi(s), b = xi(1.0 - s);
    ++r.points;
    r.max_error = std::max(r.max_error, std::abs(a - b) / std::abs(a));
  }
  return r;
}

/// max |xi(conj s) - conj xi(s)| / |xi(s)| over the same grid.
inline GridReport check_schwarz_symmetry() {
  GridReport r;
  for (const Complex s : functional_equation_grid()) {
    const Complex a = xi(s);
    ++r.points;
    r.max_error = std::max(r.max_error, std::abs(xi(std::conj(s)) - std::conj(a)) / std::abs(a));
  }
  return r;
}

/// Single factors xi(m - z) / xi(m + z), m = 1/2, 1, ..., max_m, at z = it
/// for t in [-50, 50]: max deviation of the modulus from 1.
inline GridReport check_unit_modulus(int max_m) {
  GridReport r;
  for (int m2 = 1; m2 <= 2 * max_m; ++m2) {
    for (int k = 0; k < 40; ++k) {
      const double t = -50.0 + 100.0 * (k + 0.5) / 40.0;
      const BlockIntertwining bi{{IntertwiningFactor{m2, 0, -1}}};
      ++r.points;
      r.max_error = std::max(r.max_error, std::abs(std::abs(block_product_factored(bi, Complex(0.0, t))) - 1.0));
    }
  }
  return r;
}

/// Degenerate constant term for shape (1, ..., 1) against the Borel one at
/// random unitary nu and random profiles, 2 <= n <= max_n.
inline GridReport check_borel_degeneration(int max_n, int trials, std::uint64_t seed) {
  GridReport r;
  for (int n = 2; n <= max_n; ++n) {
    for (int k = 0; k < trials; ++k) {
      Rng rng(RngSeed{seed, static_cast<std::uint64_t>(n * 1000 + k)});
      std::vector<Complex> nu(n);
      double sum = 0.0;
      for (int i = 0; i + 1 < n; ++i) {
        nu[i] = Complex(0.0, 4.0 * rng.uniform() - 2.0);
        sum += nu[i].imag();
      }
      nu[n - 1] = Complex(0.0, -sum);
      std::vector<double> alpha(n - 1);
      for (auto& a : alpha) a = 0.6 + rng.uniform();
      const Complex borel = borel_constant_term(character_from_nu(nu), alpha);
      const Complex degen = degenerate_constant_term(LeviShape(std::vector<int>(n, 1)), nu, alpha);
      ++r.points;
      r.max_error = std::max(r.max_error, std::abs(borel - degen) / std::abs(borel));
    }
  }
  return r;
}

}  // namespace siegel
