#pragma once

// Exhaustive enumeration of Siegel-reduced bases in small dimension.
//
// A reduced basis x_1..x_d of L is assembled from its last vector. x_d = v is
// primitive with |v| <= T^{(d-1)/2} vol^{1/d}. The projections of x_1..x_{d-1}
// to v^perp form a reduced basis of the projected lattice for the same T, each
// x_i is the lift whose coefficient on v lies in [-1/2, 1/2], and the two
// halves must satisfy a_{d-1} >= |v| / T.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "siegel/basis.hpp"
#include "siegel/reduction.hpp"

namespace siegel {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = std::vector<std::int64_t>;

/// Upper bound on enumeration nodes per call.
inline constexpr std::size_t kMaxCandidates = 10'000'000;

namespace detail {

struct Budget {
  std::size_t used = 0;
  void spend(std::size_t k = 1) {
    used += k;
    if (used > kMaxCandidates) throw CapacityExceeded("enumeration exceeded 10^7 candidates");
  }
};

inline std::int64_t gcd_of(const IntVector& c) {
  std::int64_t g = 0;
  for (auto x : c) g = std::gcd(g, x);
  return g;
}

// Fincke–Pohst over the coefficient vectors of `rows` (d x m). The component
// of c * rows along x_j^* is c_j + sum_{i<j} c_i n_{ji}, so coordinates are
// fixed in the order c_1, c_2, .... Calls visit(c, on_boundary) for every
// primitive c with |c * rows| <= radius (closed, widened by kTolerance).
template <class Visit>
void for_each_primitive(const Matrix& rows, double radius, Budget& budget, Visit&& visit) {
  const GsoDecomposition g = orthogonalize(rows);
  const int d = g.dim();
  const double outer = radius * (1.0 + kTolerance);
  const double inner = radius * (1.0 - kTolerance);
  const double r2 = outer * outer;
  IntVector c(d, 0);

  auto level = [&](auto&& self, int j, double partial) -> void {
    if (j == d) {
      if (gcd_of(c) != 1) return;
      Vector v = Vector::Zero(rows.cols());
      for (int i = 0; i < d; ++i) v += static_cast<double>(c[i]) * rows.row(i).transpose();
      const double len = v.norm();
      if (len > outer) return;
      visit(static_cast<const IntVector&>(c), len >= inner);
      return;
    }
    double center = 0.0;
    for (int i = 0; i < j; ++i) center -= static_cast<double>(c[i]) * g.coeffs(j, i);
    const double rem = r2 - partial;
    if (rem < 0.0) return;
    const double w = std::sqrt(rem) / g.norms(j);
    const double lo = std::ceil(center - w);
    const double hi = std::floor(center + w);
    if (hi - lo > static_cast<double>(kMaxCandidates)) {
      throw CapacityExceeded("enumeration exceeded 10^7 candidates");
    }
    for (double x = lo; x <= hi; x += 1.0) {
      budget.spend();
      c[j] = static_cast<std::int64_t>(x);
      const double t = (x - center) * g.norms(j);
      self(self, j + 1, partial + t * t);
    }
    c[j] = 0;
  };
  level(level, 0, 0.0);
}

// Unimodular W whose last row is the primitive vector c. Column operations
// bring c to e_d; W is the inverse of their product.
inline IntMatrix complete_unimodular(const IntVector& c) {
  const auto d = static_cast<Eigen::Index>(c.size());
  IntVector a = c;
  IntMatrix w = IntMatrix::Identity(d, d);
  for (;;) {
    Eigen::Index p = -1;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (a[i] != 0 && (p < 0 || std::abs(a[i]) < std::abs(a[p]))) p = i;
    }
    if (p < 0) throw InvalidArgument("zero vector cannot be completed to a basis");
    bool done = true;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (j == p || a[j] == 0) continue;
      const std::int64_t q = a[j] / a[p];
      a[j] -= q * a[p];
      w.row(p) += q * w.row(j);
      if (a[j] != 0) done = false;
    }
    if (!done) continue;
    if (std::abs(a[p]) != 1) throw InvalidArgument("vector is not primitive");
    if (p != d - 1) {
      std::swap(a[p], a[d - 1]);
      w.row(p).swap(w.row(d - 1));
    }
    if (a[d - 1] < 0) w.row(d - 1) *= -1;
    return w;
  }
}

struct EnumContext {
  double T;
  Budget budget;
  bool boundary_tie = false;
};

// Calls emit(C) for every integer C with C * rows a reduced basis of the
// lattice spanned by the rows (d x m), in both orientations.
using Emitter = std::function<void(const IntMatrix&)>;

inline void reduced_bases(const Matrix& rows, EnumContext& ctx, const Emitter& emit) {
  const Eigen::Index d = rows.rows();
  Matrix red = rows;
  Matrix u = Matrix::Identity(d, d);
  lll_in_place(red, kDefaultDelta, &u);
  const IntMatrix ui = u.array().round().cast<std::int64_t>().matrix();
  const double vol = orthogonalize(red).norms.prod();
  const double bound = std::pow(ctx.T, 0.5 * static_cast<double>(d - 1)) *
                       std::pow(vol, 1.0 / static_cast<double>(d));

  for_each_primitive(red, bound, ctx.budget, [&](const IntVector& c, bool on_boundary) {
    // In dimension 1 the bound is |v| itself, so only d > 1 can tie.
    if (on_boundary && d > 1) ctx.boundary_tie = true;
    if (d == 1) {
      IntMatrix one(1, 1);
      one(0, 0) = c[0] * ui(0, 0);
      emit(one);
      return;
    }
    const IntMatrix w = complete_unimodular(c);
    const IntMatrix wu = w * ui;
    const Matrix wb = w.cast<double>() * red;
    const Vector v = wb.row(d - 1).transpose();
    const double vv = v.squaredNorm();
    const double vlen = std::sqrt(vv);
    const Matrix top = wb.topRows(d - 1);
    const Matrix proj = top - (top * v / vv) * v.transpose();

    reduced_bases(proj, ctx, [&](const IntMatrix& cp) {
      const Matrix cpd = cp.cast<double>();
      const double last = (cpd.row(d - 2) * proj).norm();
      if (last * ctx.T < vlen * (1.0 - kTolerance)) return;
      if (last * ctx.T <= vlen * (1.0 + kTolerance)) ctx.boundary_tie = true;

      const Vector t = cpd * (top * v) / vv;
      std::vector<std::int64_t> first(d - 1), second(d - 1);
      std::vector<int> choices(d - 1, 1);
      for (Eigen::Index i = 0; i < d - 1; ++i) {
        const double k = -std::round(t(i));
        const double r = t(i) + k;
        first[i] = static_cast<std::int64_t>(k);
        if (std::abs(r) >= 0.5 - kTolerance) {
          second[i] = static_cast<std::int64_t>(r > 0 ? k - 1 : k + 1);
          choices[i] = 2;
          ctx.boundary_tie = true;
        }
      }

      IntMatrix f = IntMatrix::Zero(d, d);
      f.topLeftCorner(d - 1, d - 1) = cp;
      f(d - 1, d - 1) = 1;
      std::vector<int> pick(d - 1, 0);
      for (;;) {
        for (Eigen::Index i = 0; i < d - 1; ++i) f(i, d - 1) = pick[i] ? second[i] : first[i];
        ctx.budget.spend();
        emit(IntMatrix(f * wu));
        Eigen::Index i = 0;
        while (i < d - 1 && ++pick[i] == choices[i]) pick[i++] = 0;
        if (i == d - 1) break;
      }
    });
  });
}

inline int integer_determinant_sign(const IntMatrix& c) {
  const double det = c.cast<double>().determinant();
  return det > 0 ? 1 : -1;
}

}  // namespace detail

/// Coefficient rows c (over the given basis) of every primitive lattice
/// vector of norm at most `radius`; both signs are included.
inline std::vector<IntVector> primitive_vectors_in_ball(const Basis& basis, double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("radius must be positive");
  const int n = basis.dim();
  Matrix red = basis.rows();
  Matrix u = Matrix::Identity(n, n);
  detail::lll_in_place(red, kDefaultDelta, &u);
  const IntMatrix ui = u.array().round().cast<std::int64_t>().matrix();
  std::vector<IntVector> out;
  detail::Budget budget;
  detail::for_each_primitive(red, radius, budget, [&](const IntVector& c, bool) {
    IntVector x(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) x[j] += c[i] * ui(i, j);
    out.push_back(std::move(x));
  });
  return out;
}

/// Which determinant sign to keep.
enum class Orientation { kPositive, kNegative };

struct ReducedBasisSet {
  Basis lattice;
  double T = 0.0;
  std::vector<Basis> bases;
  std::vector<IntMatrix> coefficients;  // bases[k] = coefficients[k] * lattice
  // Set when some candidate sat on a norm, lift or seam boundary, where the
  // count depends on how ties are broken.
  bool boundary_tie = false;

  std::size_t size() const { return bases.size(); }

  /// Index of the member equal to `b` coordinatewise within `tol`.
  std::optional<std::size_t> find(const Basis& b, double tol = 1e-6) const {
    for (std::size_t k = 0; k < bases.size(); ++k) {
      if ((bases[k].rows() - b.rows()).cwiseAbs().maxCoeff() <= tol) return k;
    }
    return std::nullopt;
  }
};

/// All ordered Siegel-reduced bases of the lattice with the requested
/// determinant sign (positive by default). Intended for dimension <= 4.
inline ReducedBasisSet enumerate_reduced_bases(const Basis& basis, double T,
                                               Orientation orientation = Orientation::kPositive) {
  if (!(T > 1.0)) throw InvalidArgument("Siegel parameter T must exceed 1");
  const int want = (basis.determinant() > 0 ? 1 : -1) *
                   (orientation == Orientation::kPositive ? 1 : -1);
  ReducedBasisSet set{basis, T, {}, {}, false};
  detail::EnumContext ctx{T, {}, false};
  detail::reduced_bases(basis.rows(), ctx, [&](const IntMatrix& c) {
    if (detail::integer_determinant_sign(c) != want) return;
    set.bases.emplace_back(c.cast<double>() * basis.rows());
    set.coefficients.push_back(c);
  });
  set.boundary_tie = ctx.boundary_tie;
  return set;
}

struct ReducedCount {
  std::size_t count = 0;
  bool boundary_tie = false;
};

/// N(L) together with the boundary flag, without building the bases.
inline ReducedCount tally_reduced_bases(const Basis& basis, double T) {
  if (!(T > 1.0)) throw InvalidArgument("Siegel parameter T must exceed 1");
  const int want = basis.determinant() > 0 ? 1 : -1;
  ReducedCount out;
  detail::EnumContext ctx{T, {}, false};
  detail::reduced_bases(basis.rows(), ctx, [&](const IntMatrix& c) {
    if (detail::integer_determinant_sign(c) == want) ++out.count;
  });
  out.boundary_tie = ctx.boundary_tie;
  return out;
}

inline std::size_t count_reduced_bases(const Basis& basis, double T) {
  return tally_reduced_bases(basis, T).count;
}

}  // namespace siegel
