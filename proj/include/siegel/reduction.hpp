#pragma once

// Size reduction and an LLL reducer run directly in the later-vectors-first
// convention of basis.hpp. The Lovasz test on the pair (i, i+1) is
//
//   a_i^2 >= (delta - n_{(i+1)i}^2) a_{i+1}^2,
//
// which together with |n_{(i+1)i}| <= 1/2 gives a_i / a_{i+1} >= 1/T with
// T = 1 / sqrt(delta - 1/4). Outputs are therefore Siegel-reduced with that T.

#include <cmath>
#include <cstddef>
#include <utility>

#include "siegel/basis.hpp"

namespace siegel {

/// Siegel parameter guaranteed by LLL with Lovasz constant delta.
inline double lll_parameter(double delta) {
  if (!(delta > 0.25 && delta < 1.0)) throw InvalidArgument("delta must lie in (1/4, 1)");
  return 1.0 / std::sqrt(delta - 0.25);
}

inline constexpr double kDefaultDelta = 0.99;
inline constexpr std::size_t kMaxSwaps = 10'000'000;

struct ReductionReport {
  Basis output;
  std::size_t swaps = 0;
  double quality_ratio = 0.0;
  double energy = 0.0;
  Matrix transform;  // integral, output = transform * input up to rounding
};

/// a_n / (vol^{1/n} T^{(n-1)/2}); at most 1 for every Siegel-reduced basis.
inline double quality_ratio(const GsoDecomposition& g, double T) {
  const int n = g.dim();
  const double vol = g.norms.prod();
  return g.norms(n - 1) / (std::pow(vol, 1.0 / n) * std::pow(T, 0.5 * (n - 1)));
}

inline double quality_ratio(const Basis& basis, double T) {
  return quality_ratio(gram_schmidt(basis), T);
}

namespace detail {

// Coefficients this far past 1/2 get rounded; the slack keeps already reduced
// input untouched.
inline constexpr double kSizeSlack = kTolerance;

/// In-place LLL on the rows of `x` (d x m, linearly independent). Row
/// operations are integral, so integer-valued input below 2^53 stays exact.
/// Returns the number of swaps. For square input the sign of row 0 is flipped
/// at the end when needed so that the orientation of the input is preserved.
/// When `transform` is given, every row operation is applied to it as well.
inline std::size_t lll_in_place(Matrix& x, double delta, Matrix* transform = nullptr) {
  lll_parameter(delta);
  const Eigen::Index d = x.rows();
  if (d <= 1) return 0;
  Matrix ortho(d, x.cols());
  Vector sq(d);
  Matrix coeff = Matrix::Zero(d, d);

  auto orthogonalize_row = [&](Eigen::Index k) {
    Vector v = x.row(k).transpose();
    for (Eigen::Index j = k + 1; j < d; ++j) {
      const double c = v.dot(ortho.row(j)) / sq(j);
      v -= c * ortho.row(j).transpose();
      coeff(j, k) = c;
    }
    ortho.row(k) = v.transpose();
    sq(k) = v.squaredNorm();
    if (!(sq(k) > 0.0)) throw SingularBasis();
  };

  // Reduces row k against rows k+1.., repeating while rounding error leaves
  // a coefficient outside [-1/2, 1/2].
  auto size_reduce_row = [&](Eigen::Index k) {
    for (int pass = 0; pass < 64; ++pass) {
      orthogonalize_row(k);
      bool changed = false;
      for (Eigen::Index j = k + 1; j < d; ++j) {
        const double c = coeff(j, k);
        if (std::abs(c) <= 0.5 + kSizeSlack) continue;
        const double r = std::round(c);
        x.row(k) -= r * x.row(j);
        if (transform) transform->row(k) -= r * transform->row(j);
        for (Eigen::Index l = j + 1; l < d; ++l) coeff(l, k) -= r * coeff(l, j);
        coeff(j, k) -= r;
        changed = true;
      }
      if (!changed) return;
    }
    throw InternalError("size reduction did not stabilize");
  };

  const double det_sign = x.rows() == x.cols() ? (x.determinant() < 0 ? -1.0 : 1.0) : 1.0;
  std::size_t swaps = 0;
  orthogonalize_row(d - 1);
  Eigen::Index k = d - 2;
  while (k >= 0) {
    size_reduce_row(k);
    const double c = coeff(k + 1, k);
    if (sq(k) >= (delta - c * c) * sq(k + 1)) {
      --k;
      continue;
    }
    x.row(k).swap(x.row(k + 1));
    if (transform) transform->row(k).swap(transform->row(k + 1));
    if (++swaps > kMaxSwaps) throw InternalError("LLL exceeded the swap budget");
    if (k + 1 == d - 1) orthogonalize_row(d - 1);
    k = std::min<Eigen::Index>(k + 1, d - 2);
  }
  if (x.rows() == x.cols() && (x.determinant() < 0 ? -1.0 : 1.0) != det_sign) {
    x.row(0) *= -1.0;
    if (transform) transform->row(0) *= -1.0;
  }
  return swaps;
}

}  // namespace detail

/// Makes every |n_{ji}| <= 1/2 by integral row operations; the a_i are unchanged.
inline Basis size_reduce(const Basis& basis) {
  Matrix x = basis.rows();
  const int n = basis.dim();
  GsoDecomposition g = gram_schmidt(basis);
  for (int i = n - 2; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) {
      const double c = g.coeffs(j, i);
      if (std::abs(c) <= 0.5 + detail::kSizeSlack) continue;
      const double r = std::round(c);
      x.row(i) -= r * x.row(j);
      for (int l = j + 1; l < n; ++l) g.coeffs(l, i) -= r * g.coeffs(l, j);
      g.coeffs(j, i) -= r;
    }
  }
  return Basis(std::move(x));
}

/// LLL reduction with Lovasz constant delta. The output spans the same
/// lattice, has the same orientation as the input, and is Siegel-reduced
/// with T = lll_parameter(delta). Pivoting is deterministic: the loop always
/// returns to the first violated pair in processing order (from the end of
/// the basis towards its start).
inline ReductionReport lll_reduce(const Basis& basis, double delta = kDefaultDelta) {
  const double T = lll_parameter(delta);
  Matrix x = basis.rows();
  Matrix u = Matrix::Identity(x.rows(), x.rows());
  std::size_t swaps = 0;
  for (int attempt = 0; attempt < 3; ++attempt) {
    swaps += detail::lll_in_place(x, delta, &u);
    Basis out(x);
    const GsoDecomposition g = gram_schmidt(out);
    if (check_siegel(g, T)) {
      return {std::move(out), swaps, quality_ratio(g, T), std::exp(log_energy(g)), std::move(u)};
    }
  }
  throw InternalError("LLL output failed the Siegel postcondition");
}

}  // namespace siegel
