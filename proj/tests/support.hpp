#pragma once

#include <gtest/gtest.h>

#include <cmath>

#include "siegel/basis.hpp"

namespace siegel::testing {

inline Matrix rows2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Matrix random_rotation(int n, unsigned seed) {
  Matrix g = Matrix::Zero(n, n);
  unsigned x = seed * 2654435761u + 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      x = x * 1664525u + 1013904223u;
      g(i, j) = static_cast<double>(x >> 8) / static_cast<double>(1u << 24) - 0.5;
    }
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ();
}

/// a_n <= vol^{1/n} T^{(n-1)/2} for a Siegel-reduced basis.
inline void expect_worst_case_bound(const Basis& b, double T) {
  const auto g = gram_schmidt(b);
  const int n = g.dim();
  const double vol = g.norms.prod();
  EXPECT_LE(g.norms(n - 1), std::pow(vol, 1.0 / n) * std::pow(T, 0.5 * (n - 1)) * (1 + 1e-9));
}

/// Change of basis out * in^{-1}: integral within tol and determinant +-1.
inline bool same_lattice(const Basis& out, const Basis& in, double tol = 1e-6) {
  const Matrix c = out.rows() * in.rows().inverse();
  const Matrix r = c.array().round().matrix();
  if ((c - r).cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(std::abs(r.determinant()) - 1.0) < 1e-9;
}

}  // namespace siegel::testing
