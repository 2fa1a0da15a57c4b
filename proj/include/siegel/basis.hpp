#pragma once

// Lattice bases and their Gram–Schmidt data.
//
// Index convention: x_i^* is the projection of x_i orthogonal to the span of
// the LATER vectors x_{i+1}, ..., x_n, so x_n^* = x_n and the short vector of
// a reduced basis is the last row. This is the opposite of the usual LLL
// bookkeeping. Code indices are 0-based throughout.
//
//   this library (1-based)        textbook LLL (b_1 .. b_n)
//   ----------------------        -------------------------
//   x_i                           b_{n+1-i}
//   a_i = |x_i^*|                 |b*_{n+1-i}|
//   n_{ji}, j > i                 mu_{n+1-i, n+1-j}
//   a_i >= a_{i+1} / T            |b*_{k-1}| <= T |b*_k|,  k = n+1-i

#include <Eigen/Dense>

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "siegel/errors.hpp"

namespace siegel {

/// Global comparison tolerance for the double-precision core.
inline constexpr double kTolerance = 1e-9;

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// An ordered basis of a full-rank lattice in R^n; row i is x_{i+1}.
class Basis {
 public:
  explicit Basis(Matrix rows) : rows_(std::move(rows)) {
    if (rows_.rows() < 1 || rows_.rows() != rows_.cols()) {
      throw InvalidArgument("basis must be a non-empty square matrix");
    }
    if (!rows_.allFinite()) throw InvalidArgument("basis has non-finite entries");
    // Absolute test: bases in this library are normalized to covolume about 1.
    if (!(std::abs(rows_.determinant()) > kTolerance)) throw SingularBasis();
  }

  static Basis identity(int n) { return Basis(Matrix::Identity(n, n)); }

  static Basis diagonal(const std::vector<double>& d) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()),
                            static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
    }
    return Basis(std::move(m));
  }

  int dim() const { return static_cast<int>(rows_.rows()); }
  const Matrix& rows() const { return rows_; }
  Vector row(int i) const { return rows_.row(i).transpose(); }
  double determinant() const { return rows_.determinant(); }

  friend bool operator==(const Basis& a, const Basis& b) { return a.rows_ == b.rows_; }

 private:
  Matrix rows_;
};

/// Orthogonalized rows, their norms a_i and the coefficients n_{ji} (j > i).
struct GsoDecomposition {
  Matrix ortho;   // row i is x_i^*
  Vector norms;   // a_i = |x_i^*|
  Matrix coeffs;  // coeffs(j, i) = n_{ji} for j > i; zero on and above the diagonal

  int dim() const { return static_cast<int>(norms.size()); }
  double coeff(int j, int i) const { return coeffs(j, i); }
};

namespace detail {

// Orthogonalizes d vectors of R^m (d <= m) against the later ones, using
// modified Gram–Schmidt. Vectors need only be linearly independent.
inline GsoDecomposition orthogonalize(const Matrix& rows) {
  const Eigen::Index d = rows.rows();
  GsoDecomposition g{Matrix(d, rows.cols()), Vector(d), Matrix::Zero(d, d)};
  Vector sq(d);
  for (Eigen::Index i = d - 1; i >= 0; --i) {
    Vector v = rows.row(i).transpose();
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const double c = v.dot(g.ortho.row(j)) / sq(j);
      v -= c * g.ortho.row(j).transpose();
      g.coeffs(j, i) = c;
    }
    g.ortho.row(i) = v.transpose();
    sq(i) = v.squaredNorm();
    g.norms(i) = std::sqrt(sq(i));
    if (!(g.norms(i) > 0.0)) throw SingularBasis();
  }
  return g;
}

}  // namespace detail

inline GsoDecomposition gram_schmidt(const Basis& basis) {
  return detail::orthogonalize(basis.rows());
}

enum class Violation { kNone, kRatio, kCoefficient };

/// Outcome of the Siegel test; on failure names the first violated condition.
/// For kRatio, `index` is i with a_i < a_{i+1}/T; for kCoefficient, the
/// offending coefficient is n_{other,index}. Indices are 0-based.
struct SiegelCheck {
  Violation violation = Violation::kNone;
  int index = -1;
  int other = -1;
  double value = 0.0;

  bool reduced() const { return violation == Violation::kNone; }
  explicit operator bool() const { return reduced(); }
};

/// Siegel test on an already computed decomposition. Both inequalities are
/// closed and widened by kTolerance, so lattices with exact rational data
/// (Z^n, for instance) may sit exactly on the boundary and pass.
inline SiegelCheck check_siegel(const GsoDecomposition& g, double T) {
  if (!(T > 1.0)) throw InvalidArgument("Siegel parameter T must exceed 1");
  const int n = g.dim();
  for (int i = 0; i < n; ++i) {
    if (i + 1 < n && g.norms(i) * T < g.norms(i + 1) * (1.0 - kTolerance)) {
      return {Violation::kRatio, i, i + 1, g.norms(i) / g.norms(i + 1)};
    }
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(g.coeffs(j, i)) > 0.5 + kTolerance) {
        return {Violation::kCoefficient, i, j, g.coeffs(j, i)};
      }
    }
  }
  return {};
}

inline SiegelCheck check_siegel(const Basis& basis, double T) {
  return check_siegel(gram_schmidt(basis), T);
}

inline bool is_siegel_reduced(const Basis& basis, double T) {
  return check_siegel(basis, T).reduced();
}

/// vol(L) = |det| = prod a_i.
inline double covolume(const Basis& basis) { return gram_schmidt(basis).norms.prod(); }

/// log of prod_i |x_i ^ ... ^ x_n| = sum_i i log a_i (1-based i).
inline double log_energy(const GsoDecomposition& g) {
  double s = 0.0;
  for (int i = 0; i < g.dim(); ++i) s += (i + 1) * std::log(g.norms(i));
  return s;
}

inline double energy(const Basis& basis) { return std::exp(log_energy(gram_schmidt(basis))); }

// Text format: first line n, then n lines of n whitespace-separated numbers.
inline Basis read_basis(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("basis file is empty");
  std::istringstream head(line);
  long n = 0;
  std::string extra;
  if (!(head >> n) || (head >> extra) || n < 1) {
    throw ParseError("first line must hold a positive dimension");
  }
  Matrix m(n, n);
  for (long i = 0; i < n; ++i) {
    if (!next_line()) throw ParseError("expected " + std::to_string(n) + " rows");
    std::istringstream row(line);
    for (long j = 0; j < n; ++j) {
      if (!(row >> m(i, j))) {
        throw ParseError("row " + std::to_string(i + 1) + " has fewer than " +
                         std::to_string(n) + " coordinates");
      }
    }
    if (row >> extra) {
      throw ParseError("row " + std::to_string(i + 1) + " has more than " +
                       std::to_string(n) + " coordinates");
    }
  }
  if (next_line()) throw ParseError("trailing data after " + std::to_string(n) + " rows");
  return Basis(std::move(m));
}

inline void write_basis(std::ostream& out, const Basis& basis) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  out << basis.dim() << '\n';
  for (int i = 0; i < basis.dim(); ++i) {
    for (int j = 0; j < basis.dim(); ++j) {
      if (j) out << ' ';
      out << basis.rows()(i, j);
    }
    out << '\n';
  }
  out.precision(old);
}

}  // namespace siegel
