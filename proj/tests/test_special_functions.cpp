#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "siegel/special_functions.hpp"
#include "siegel/verification.hpp"

using namespace siegel;

namespace {

struct Oracle {
  Complex s, zeta, xi, gamma_r;
};

// 30-digit reference evaluations, rounded to double.
const Oracle kOracles[] = {
    {{2.0, 0.0}, {1.6449340668482264, 0.0}, {0.52359877559829887, 0.0}, {0.31830988618379067, 0.0}},
    {{0.3, 2.0},
     {0.3853103509076439, -0.28252821168648399},
     {-0.20717261339322476, 0.04337566908254864},
     {-0.40335587356774014, -0.18318673345659206}},
    {{-0.7, 3.5},
     {0.36548164476557518, 0.113099414199625},
     {-0.036895552718655921, 0.041756475247056983},
     {-0.059862783095030177, 0.13277526147336326}},
    {{1.5, -25.0},
     {0.72712976238460026, -0.15629550466134554},
     {2.6880196723224475e-9, 3.4968896729917862e-9},
     {2.5454238667787024e-9, 5.3563038982950627e-9}},
    {{0.25, 80.0},
     {-0.73776179072561644, 2.8420131406289001},
     {8.1319201212366524e-28, 1.3887543102730029e-28},
     {-2.3807947006606494e-29, -2.7995205480665327e-28}},
    {{3.0, 1.0},
     {1.1072144084314092, -0.14829086717817535},
     {0.12433440706400658, -0.098673582304782258},
     {0.12204146030684842, -0.072773572770192539}},
    {{-1.5, 0.5},
     {-0.010576955315629866, -0.034897879412332204},
     {0.23936267191035517, 0.1225566617386727},
     {-5.1203443958641058, 5.3070565075428915}},
};

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Zeta, Oracles) {
  for (const auto& o : kOracles) EXPECT_LT(rel(zeta(o.s), o.zeta), 1e-10) << o.s;
}

TEST(Zeta, ClosedForms) {
  constexpr double pi = std::numbers::pi;
  EXPECT_NEAR(zeta(2.0).real(), pi * pi / 6, 1e-14);
  EXPECT_NEAR(zeta(4.0).real(), std::pow(pi, 4) / 90, 1e-14);
  EXPECT_EQ(zeta(0.0), Complex(-0.5));
  EXPECT_NEAR(zeta(-1.0).real(), -1.0 / 12, 1e-14);
  EXPECT_EQ(zeta(-2.0), Complex(0.0));
  EXPECT_NEAR(zeta(3.0).real(), 1.2020569031595943, 1e-14);
}

TEST(Zeta, NearFirstZero) { EXPECT_LT(std::abs(zeta(Complex(0.5, 14.134725))), 1e-4); }

TEST(Zeta, PoleAtOne) { EXPECT_THROW(zeta(1.0), PoleError); }

TEST(LogGamma, Oracles) {
  struct {
    Complex z;
    double re, im;
  } cases[] = {{{10, 3}, 12.336114285225996, 6.8035696591286175},
               {{-3.3, 1}, -3.3559095397326839, -10.590844788196893},
               {{0.5, 40}, -61.912914538591192, 107.55621986920906}};
  for (const auto& c : cases) {
    const Complex v = log_gamma(c.z);
    EXPECT_NEAR(v.real(), c.re, 1e-12 * std::abs(c.re));
    // The imaginary part is compared modulo 2 pi.
    const double d = std::remainder(v.imag() - c.im, 2 * std::numbers::pi);
    EXPECT_NEAR(d, 0, 1e-10);
  }
  EXPECT_NEAR(log_gamma(5.0).real(), std::log(24.0), 1e-14);
}

TEST(GammaR, Oracles) {
  for (const auto& o : kOracles) EXPECT_LT(rel(gamma_r(o.s), o.gamma_r), 1e-10) << o.s;
}

TEST(GammaR, ClosedForms) {
  EXPECT_NEAR(gamma_r(1.0).real(), 1, 1e-14);
  EXPECT_NEAR(gamma_r(2.0).real(), 1 / std::numbers::pi, 1e-15);
  EXPECT_THROW(gamma_r(0.0), PoleError);
  EXPECT_THROW(gamma_r(-4.0), PoleError);
  EXPECT_NO_THROW(gamma_r(-3.0));
}

TEST(GammaR, HalfShiftGrowthExponent) {
  // Least-squares slope of log|Gamma_R(z + 1/2) / Gamma_R(z)| against log|z| on z = 10 + it.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (double t = 10; t <= 1000; t *= 1.2, ++k) {
    const Complex z(10, t);
    const double x = std::log(std::abs(z));
    const double y = std::log(std::abs(gamma_r(z + 0.5) / gamma_r(z)));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  EXPECT_GE(slope, 0.2);
  EXPECT_LE(slope, 0.3);
}

TEST(Xi, Oracles) {
  for (const auto& o : kOracles) EXPECT_LT(rel(xi(o.s), o.xi), 1e-10) << o.s;
}

TEST(Xi, ClosedFormAndPoles) {
  EXPECT_NEAR(xi(2.0).real(), std::numbers::pi / 6, 1e-14);
  EXPECT_THROW(xi(0.0), PoleError);
  EXPECT_THROW(xi(1.0), PoleError);
  EXPECT_LT(rel(xi(-2.0), xi(3.0)), 1e-12);
  EXPECT_LT(rel(xi(-4.0), xi(5.0)), 1e-12);
}

TEST(Xi, FunctionalEquationInstance) {
  EXPECT_LT(rel(xi(Complex(0.3, 2)), xi(Complex(0.7, -2))), 1e-10);
}

TEST(XiProperty, FunctionalEquationGrid) {
  const auto r = check_functional_equation();
  EXPECT_EQ(r.points, 200);
  EXPECT_LE(r.max_error, 1e-10);
}

TEST(XiProperty, SchwarzGrid) { EXPECT_LE(check_schwarz_symmetry().max_error, 1e-12); }

TEST(XiProperty, ReflectedModulus) {
  for (double m : {-0.5, 0.5, 1.5, 2.5})
    for (double t : {0.3, 5.0, 40.0})
      EXPECT_NEAR(std::abs(xi(Complex(m, t))), std::abs(xi(Complex(m, -t))), 1e-12 * std::abs(xi(Complex(m, t))));
}

TEST(XiQ, RegularizedAtOne) {
  EXPECT_EQ(xi_q(1.0), Complex(10.0));
  for (double eps : {1e-3, 1e-5, 1e-8}) {
    EXPECT_LT(std::abs(xi_q(Complex(1 + eps, 0))), 10.5);
    EXPECT_LT(std::abs(xi_q(Complex(1, eps))), 10.5);
  }
  EXPECT_EQ(xi_q(3.0), xi(3.0));
  EXPECT_NEAR(q_regularizer(Complex(0, 0.05)), 0.5, 1e-15);
  EXPECT_THROW(xi_q(0.0), PoleError);
}
