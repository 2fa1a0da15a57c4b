#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "siegel/constant_terms.hpp"
#include "siegel/verification.hpp"

using namespace siegel;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

// Direct summation written from scratch: chi = sigma nu + rho with
// (sigma nu)_{sigma(i)} = nu_i and a^chi = prod alpha_i^{chi_1 + ... + chi_i}.
Complex borel_oracle(const std::vector<Complex>& nu, const std::vector<double>& alpha) {
  const int n = static_cast<int>(nu.size());
  std::vector<int> s(n);
  std::iota(s.begin(), s.end(), 0);
  Complex total = 0;
  do {
    Complex coeff = 1;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (s[i] > s[j]) coeff *= xi(nu[i] - nu[j]) / xi(nu[i] - nu[j] + 1.0);
    std::vector<Complex> chi(n);
    for (int i = 0; i < n; ++i) chi[s[i]] = nu[i];
    for (int i = 0; i < n; ++i) chi[i] += 0.5 * (n - 1) - i;
    Complex partial = 0, log_power = 0;
    for (int i = 0; i + 1 < n; ++i) {
      partial += chi[i];
      log_power += partial * std::log(alpha[i]);
    }
    total += coeff * std::exp(log_power);
  } while (std::next_permutation(s.begin(), s.end()));
  return total;
}

}  // namespace

TEST(BlockProduct, EmptyIsOne) {
  const LeviShape shape({1, 2});
  const Permutation sigma{1, 3, 2};
  EXPECT_EQ(block_product_raw(shape, sigma, 0, 1, Complex(0, 1.3)), Complex(1));
  EXPECT_EQ(block_product_factored(BlockIntertwining{}, Complex(0, 1.3)), Complex(1));
}

TEST(BlockProduct, SingletonPair) {
  const Complex z(0, 2);
  const Complex raw = block_product_raw(LeviShape({1, 1}), {2, 1}, 0, 1, z);
  EXPECT_LT(rel(raw, xi(z) / xi(z + 1.0)), 1e-14);
  const auto bi = block_intertwining_factors(LeviShape({1, 1}), {2, 1}, 0, 1);
  EXPECT_LT(rel(block_product_factored(bi, z), raw), 1e-10);
}

TEST(BlockProduct, OneAboveTwoTelescopes) {
  const Complex z(0, 0.8);
  const Complex raw = block_product_raw(LeviShape({1, 2}), {3, 2, 1}, 0, 1, z);
  EXPECT_LT(rel(raw, xi(z - 0.5) / xi(z + 1.5)), 1e-10);
}

TEST(BlockProduct, ConjugatePairUnitModulus) {
  const BlockIntertwining bi{{IntertwiningFactor{2, 0, -1}}};
  const Complex z(0, 3);
  const Complex v = block_product_factored(bi, z);
  EXPECT_LT(rel(v, xi(1.0 - z) / xi(1.0 + z)), 1e-14);
  EXPECT_NEAR(std::abs(v), 1, 1e-10);
}

TEST(BlockProduct, PoleReported) {
  try {
    block_product_raw(LeviShape({1, 1}), {2, 1}, 0, 1, Complex(0, 0));
    FAIL() << "expected a pole";
  } catch (const PoleError& e) {
    EXPECT_NE(std::string(e.what()).find("b = "), std::string::npos);
  }
  EXPECT_THROW(block_product_raw(LeviShape({1, 1}), {2, 1}, 1, 0, Complex(0, 1)), OrderViolation);
}

TEST(BlockProduct, ShiftTableMatchesDirect) {
  const Complex z(0, -4.2);
  const XiShiftTable table(z, 10);
  const DirectXi direct{z};
  for (int e : {1, -1})
    for (int h = -10; h <= 10; ++h) EXPECT_EQ(table(e, h), direct(e, h));
  EXPECT_THROW(table(1, 11), InvalidArgument);
}

TEST(BlockProductProperty, RawEqualsFactoredSmall) {
  const auto s = sweep_intertwining(6, 4, 99);
  EXPECT_TRUE(s.passed());
  EXPECT_GT(s.unit_cases, 0);
}

TEST(BlockProductProperty, AllJZeroUnitModulus) { EXPECT_LE(check_unit_modulus(8).max_error, 1e-10); }

TEST(Borel, RankOne) {
  const double t = 0.9, a = 1.7;
  const std::vector<Complex> nu{Complex(0, t), Complex(0, -t)};
  const Complex expected = std::pow(a, Complex(0.5, t)) +
                           xi(Complex(0, 2 * t)) / xi(Complex(1, 2 * t)) * std::pow(a, Complex(0.5, -t));
  EXPECT_LT(rel(borel_constant_term(character_from_nu(nu), {a}), expected), 1e-12);
}

TEST(Borel, IdentityTermAtUnitProfile) {
  // At a = 1 every power is 1, so the value is the sum of the coefficients.
  const std::vector<Complex> nu{Complex(0, 0.4), Complex(0, -1.1), Complex(0, 0.7)};
  const Complex at_one = borel_constant_term(character_from_nu(nu), {1.0, 1.0});
  EXPECT_LT(rel(at_one, borel_oracle(nu, {1.0, 1.0})), 1e-12);
}

TEST(Borel, ThreeDimensionalOracle) {
  const std::vector<Complex> nu{Complex(0, 0.4), Complex(0, -1.1), Complex(0, 0.7)};
  const std::vector<double> alpha{1.3, 0.8};
  EXPECT_LT(rel(borel_constant_term(character_from_nu(nu), alpha), borel_oracle(nu, alpha)), 1e-9);
  const std::vector<Complex> nu4{Complex(0, 0.2), Complex(0, 1.5), Complex(0, -0.6), Complex(0, -1.1)};
  const std::vector<double> alpha4{0.9, 1.4, 1.1};
  EXPECT_LT(rel(borel_constant_term(character_from_nu(nu4), alpha4), borel_oracle(nu4, alpha4)), 1e-9);
}

TEST(Degenerate, AllSingletonsIsBorel) {
  const auto r = check_borel_degeneration(6, 3, 5);
  EXPECT_LE(r.max_error, 1e-9);
  EXPECT_EQ(r.points, 15);
}

TEST(Degenerate, SingleBlockIsOne) {
  for (int n = 2; n <= 6; ++n) {
    std::vector<double> alpha(n - 1);
    for (int i = 0; i + 1 < n; ++i) alpha[i] = 0.7 + 0.3 * i;
    const Complex v = degenerate_constant_term(LeviShape({n}), {0.0}, alpha);
    EXPECT_NEAR(std::abs(v - 1.0), 0, 1e-12);
  }
}

TEST(Degenerate, ConjugateSymmetry) {
  const std::vector<double> alpha{1.2, 0.9};
  for (double t : {0.3, 1.7, 4.0}) {
    const Complex plus = degenerate_constant_term(LeviShape({1, 2}), {Complex(0, 2 * t), Complex(0, -t)}, alpha);
    const Complex minus = degenerate_constant_term(LeviShape({1, 2}), {Complex(0, -2 * t), Complex(0, t)}, alpha);
    EXPECT_TRUE(std::isfinite(plus.real()) && std::isfinite(plus.imag()));
    EXPECT_LT(std::abs(plus - std::conj(minus)), 1e-10 * std::abs(plus));
  }
}

TEST(ConstantTerms, ProfileChecks) {
  EXPECT_THROW(borel_constant_term(character_from_nu(std::vector<Complex>(7, 0.0)), std::vector<double>(6, 1)),
               InvalidArgument);
  EXPECT_THROW(borel_constant_term(character_from_nu({0.0, 0.0}), {1.0, 1.0}), InvalidArgument);
  EXPECT_THROW(borel_constant_term(character_from_nu({Complex(0, 1), Complex(0, -1)}), {-1.0}), InvalidArgument);
}
