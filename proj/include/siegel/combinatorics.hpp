#pragma once

// Finite combinatorics behind the constant terms of degenerate Eisenstein
// series: character coordinates, Levi shapes, divisions of {1..n}, rho_J,
// cut functions and block intertwining factors.
//
// Conventions. Elements of {1..n} and permutation values are 1-based; a
// Permutation is stored in one-line notation, sigma[p - 1] = sigma(p).
// Half-integers are stored doubled (field names ending in 2).
//
// Inside a block of size n_B starting at position s, position p carries the
// half-integer b = (n_B - 1)/2 - (p - s). The labelling reverses order, so a
// permutation decreasing on the block becomes increasing in b.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "siegel/errors.hpp"

namespace siegel {

using Permutation = std::vector<int>;

// ---------------------------------------------------------------------------
// Character coordinates

/// A character of the diagonal torus, in nu-coordinates (sum zero) and in
/// simple-root coordinates mu, with mu_i = nu_1 + ... + nu_i.
struct CharacterCoords {
  std::vector<std::complex<double>> nu;
  std::vector<std::complex<double>> mu;

  int dim() const { return static_cast<int>(nu.size()); }
};

inline constexpr double kSumTolerance = 1e-12;

inline std::vector<std::complex<double>> mu_from_nu(const std::vector<std::complex<double>>& nu) {
  if (nu.empty()) throw InvalidArgument("nu must be non-empty");
  std::complex<double> sum = 0.0;
  double scale = 1.0;
  for (const auto& v : nu) {
    sum += v;
    scale = std::max(scale, std::abs(v));
  }
  if (std::abs(sum) > kSumTolerance * scale) throw NonZeroSum();
  std::vector<std::complex<double>> mu(nu.size() - 1);
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i + 1 < nu.size(); ++i) mu[i] = (acc += nu[i]);
  return mu;
}

inline std::vector<std::complex<double>> nu_from_mu(const std::vector<std::complex<double>>& mu) {
  const std::size_t n = mu.size() + 1;
  std::vector<std::complex<double>> nu(n);
  nu[0] = n > 1 ? mu[0] : 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) nu[i] = mu[i] - mu[i - 1];
  if (n > 1) nu[n - 1] = -mu[n - 2];
  return nu;
}

inline CharacterCoords character_from_nu(std::vector<std::complex<double>> nu) {
  auto mu = mu_from_nu(nu);
  return {std::move(nu), std::move(mu)};
}

inline CharacterCoords character_from_mu(std::vector<std::complex<double>> mu) {
  auto nu = nu_from_mu(mu);
  return {std::move(nu), std::move(mu)};
}

struct WeightAndProduct {
  std::complex<double> wt;
  std::complex<double> product;
};

/// wt = sum of mu_i, P = product of mu_i.
inline WeightAndProduct weight_and_product(const CharacterCoords& c) {
  WeightAndProduct r{0.0, 1.0};
  for (const auto& m : c.mu) {
    r.wt += m;
    r.product *= m;
  }
  return r;
}

struct Rho {
  CharacterCoords two_rho;
  CharacterCoords rho;
};

/// 2 rho has mu_i = i (n - i); in nu-coordinates rho = ((n-1)/2, ..., -(n-1)/2).
inline Rho rho(int n) {
  if (n < 1) throw InvalidArgument("dimension must be positive");
  std::vector<std::complex<double>> mu2(n - 1), mu1(n - 1);
  for (int i = 1; i < n; ++i) {
    mu2[i - 1] = static_cast<double>(i) * (n - i);
    mu1[i - 1] = 0.5 * mu2[i - 1];
  }
  return {character_from_mu(std::move(mu2)), character_from_mu(std::move(mu1))};
}

/// wt(2 rho) = (n^3 - n) / 6, summed directly.
inline std::int64_t weight_two_rho(int n) {
  std::int64_t s = 0;
  for (std::int64_t i = 1; i < n; ++i) s += i * (n - i);
  return s;
}

// ---------------------------------------------------------------------------
// Levi shapes and divisions

/// A composition (n_1, ..., n_k) of n. Block t occupies positions
/// starts[t] + 1 .. starts[t] + parts[t].
class LeviShape {
 public:
  explicit LeviShape(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw InvalidArgument("shape needs at least one part");
    int acc = 0;
    for (int p : parts_) {
      if (p < 1) throw InvalidArgument("shape parts must be positive");
      starts_.push_back(acc);
      acc += p;
    }
    n_ = acc;
  }

  int n() const { return n_; }
  int blocks() const { return static_cast<int>(parts_.size()); }
  const std::vector<int>& parts() const { return parts_; }
  int size(int t) const { return parts_[t]; }
  /// Number of positions before block t (N_t in 0-based block numbering).
  int start(int t) const { return starts_[t]; }
  /// Prefix sums N_1 < N_2 < ... < N_k = n.
  std::vector<int> prefix_sums() const {
    std::vector<int> out;
    for (int t = 0; t < blocks(); ++t) out.push_back(starts_[t] + parts_[t]);
    return out;
  }
  bool good() const { return std::is_sorted(parts_.begin(), parts_.end()); }
  int block_of(int position) const {
    const auto it = std::upper_bound(starts_.begin(), starts_.end(), position - 1);
    return static_cast<int>(it - starts_.begin()) - 1;
  }
  /// Doubled label 2b of a 1-based position.
  int label2(int position) const {
    const int t = block_of(position);
    return (parts_[t] - 1) - 2 * (position - 1 - starts_[t]);
  }

  friend bool operator==(const LeviShape& a, const LeviShape& b) { return a.parts_ == b.parts_; }

 private:
  std::vector<int> parts_;
  std::vector<int> starts_;
  int n_ = 0;
};

/// Ordered tuple of disjoint non-empty subsets covering {1..n}.
class Division {
 public:
  explicit Division(std::vector<std::vector<int>> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw InvalidArgument("division needs at least one part");
    int n = 0;
    for (auto& p : parts_) {
      if (p.empty()) throw InvalidArgument("division parts must be non-empty");
      std::sort(p.begin(), p.end());
      n += static_cast<int>(p.size());
    }
    std::vector<bool> seen(n + 1, false);
    for (const auto& p : parts_) {
      for (int x : p) {
        if (x < 1 || x > n || seen[x]) throw InvalidArgument("division parts must cover 1..n once");
        seen[x] = true;
      }
    }
    n_ = n;
  }

  int n() const { return n_; }
  int size() const { return static_cast<int>(parts_.size()); }
  const std::vector<std::vector<int>>& parts() const { return parts_; }
  /// Largest part size.
  int largest_part() const {
    std::size_t z = 0;
    for (const auto& p : parts_) z = std::max(z, p.size());
    return static_cast<int>(z);
  }
  /// part_of()[x] is the index of the part containing x (index 0 unused).
  std::vector<int> part_of() const {
    std::vector<int> out(n_ + 1, -1);
    for (int t = 0; t < size(); ++t)
      for (int x : parts_[t]) out[x] = t;
    return out;
  }

  friend bool operator==(const Division& a, const Division& b) { return a.parts_ == b.parts_; }

 private:
  std::vector<std::vector<int>> parts_;
  int n_ = 0;
};

/// sigma lies in S[M] when it is decreasing on every block.
inline bool in_levi_coset_set(const LeviShape& shape, const Permutation& sigma) {
  for (int t = 0; t < shape.blocks(); ++t) {
    for (int p = shape.start(t) + 1; p < shape.start(t) + shape.size(t); ++p) {
      if (sigma[p - 1] <= sigma[p]) return false;
    }
  }
  return true;
}

struct LeviSigma {
  LeviShape shape;
  Permutation sigma;
};

/// Block t gets size #J_t, and sigma sends the s-th position from the end of
/// block t to the s-th smallest element of J_t. The shape keeps the order
/// of the parts; shape.good() tells whether it is the good representative.
inline LeviSigma division_to_levi_sigma(const Division& j) {
  std::vector<int> sizes;
  for (const auto& p : j.parts()) sizes.push_back(static_cast<int>(p.size()));
  LeviShape shape(sizes);
  Permutation sigma(j.n());
  for (int t = 0; t < j.size(); ++t) {
    const int end = shape.start(t) + shape.size(t);
    for (int s = 0; s < shape.size(t); ++s) sigma[end - s - 1] = j.parts()[t][s];
  }
  return {std::move(shape), std::move(sigma)};
}

inline Division levi_sigma_to_division(const LeviShape& shape, const Permutation& sigma) {
  std::vector<std::vector<int>> parts(shape.blocks());
  for (int t = 0; t < shape.blocks(); ++t)
    for (int p = 0; p < shape.size(t); ++p) parts[t].push_back(sigma[shape.start(t) + p]);
  return Division(std::move(parts));
}

/// Calls visit(shape) for every composition of n, in lexicographic order.
inline void for_each_composition(int n, const std::function<void(const LeviShape&)>& visit) {
  std::vector<int> parts;
  auto rec = [&](auto&& self, int left) -> void {
    if (left == 0) {
      visit(LeviShape(parts));
      return;
    }
    for (int p = 1; p <= left; ++p) {
      parts.push_back(p);
      self(self, left - p);
      parts.pop_back();
    }
  };
  rec(rec, n);
}

/// Good shapes n_1 <= n_2 <= ... (partitions of n).
inline std::vector<LeviShape> good_shapes(int n) {
  std::vector<LeviShape> out;
  std::vector<int> parts;
  auto rec = [&](auto&& self, int left, int min_part) -> void {
    if (left == 0) {
      out.emplace_back(parts);
      return;
    }
    for (int p = min_part; p <= left; ++p) {
      parts.push_back(p);
      self(self, left - p, p);
      parts.pop_back();
    }
  };
  rec(rec, n, 1);
  return out;
}

/// Calls visit(sigma) for every sigma in S[M], ordered by the block label
/// sequence of the values 1..n.
inline void for_each_levi_permutation(const LeviShape& shape,
                                      const std::function<void(const Permutation&)>& visit) {
  std::vector<int> label;
  for (int t = 0; t < shape.blocks(); ++t) label.insert(label.end(), shape.size(t), t);
  Permutation sigma(shape.n());
  do {
    // Values with label t fill block t in decreasing order.
    std::vector<int> cursor(shape.blocks());
    for (int t = 0; t < shape.blocks(); ++t) cursor[t] = shape.start(t) + shape.size(t) - 1;
    for (int v = 1; v <= shape.n(); ++v) sigma[cursor[label[v - 1]]--] = v;
    visit(sigma);
  } while (std::next_permutation(label.begin(), label.end()));
}

inline std::int64_t levi_coset_count(const LeviShape& shape) {
  std::int64_t r = 1;
  int m = 0;
  for (int p : shape.parts()) {
    for (int i = 1; i <= p; ++i) r = r * (++m) / i;
  }
  return r;
}

/// Calls visit(J) for every ordered set partition of {1..n}.
inline void for_each_division(int n, const std::function<void(const Division&)>& visit) {
  for_each_composition(n, [&](const LeviShape& shape) {
    for_each_levi_permutation(shape, [&](const Permutation& s) {
      visit(levi_sigma_to_division(shape, s));
    });
  });
}

// ---------------------------------------------------------------------------
// rho_J and weight bounds

/// (sigma chi)_{sigma(i)} = chi_i in nu-coordinates.
inline std::vector<std::complex<double>> permute_nu(const Permutation& sigma,
                                                    const std::vector<std::complex<double>>& nu) {
  std::vector<std::complex<double>> out(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i) out[sigma[i] - 1] = nu[i];
  return out;
}

/// 2 rho_M in nu-coordinates: the string (n_t - 1, n_t - 3, ..., 1 - n_t) on block t.
inline std::vector<std::complex<double>> two_rho_levi(const LeviShape& shape) {
  std::vector<std::complex<double>> nu(shape.n());
  for (int p = 1; p <= shape.n(); ++p) nu[p - 1] = static_cast<double>(shape.label2(p));
  return nu;
}

struct RhoJ {
  CharacterCoords two_rho_j;
  std::int64_t wt_difference;  // wt(2 rho - 2 rho_J)
};

/// 2 rho_J = -sigma(2 rho_M) for (M, sigma) attached to J.
inline RhoJ rho_J(const Division& j) {
  const auto [shape, sigma] = division_to_levi_sigma(j);
  auto nu = permute_nu(sigma, two_rho_levi(shape));
  for (auto& v : nu) v = -v;
  CharacterCoords c = character_from_nu(std::move(nu));
  const double wt_j = weight_and_product(c).wt.real();
  return {std::move(c), weight_two_rho(j.n()) - static_cast<std::int64_t>(std::llround(wt_j))};
}

/// mu_i(2 rho - 2 rho_J) = #{(a, b) : a <= i < b, a and b in different parts}.
inline std::vector<std::int64_t> mu_two_rho_minus_rho_J(const Division& j) {
  const auto part = j.part_of();
  const int n = j.n();
  std::vector<std::int64_t> mu(n - 1, 0);
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (part[a] != part[b])
        for (int i = a; i < b; ++i) ++mu[i - 1];
  return mu;
}

struct WeightBoundRecord {
  std::int64_t wt = 0;  // wt(2 rho - 2 rho_J)
  bool bound_a_ok = false;
  bool bound_b_ok = false;
  bool mu_positive_ok = false;

  bool ok() const { return bound_a_ok && bound_b_ok && mu_positive_ok; }
};

/// wt >= n^2 (#J - 1) / 32, wt >= n^2 (n - z) / 16 with z the largest part
/// size, and every mu_i(2 rho - 2 rho_J) >= 1.
inline WeightBoundRecord check_weight_bounds(const Division& j) {
  if (j.size() < 2) throw SinglePart();
  const std::int64_t n = j.n();
  const auto mu = mu_two_rho_minus_rho_J(j);
  WeightBoundRecord r;
  r.wt = std::accumulate(mu.begin(), mu.end(), std::int64_t{0});
  r.bound_a_ok = 32 * r.wt >= n * n * (j.size() - 1);
  r.bound_b_ok = 16 * r.wt >= n * n * (n - j.largest_part());
  r.mu_positive_ok = std::all_of(mu.begin(), mu.end(), [](std::int64_t m) { return m >= 1; });
  return r;
}

// ---------------------------------------------------------------------------
// Shifted parameter

/// Block t contributes nu_t + (n_t - 1)/2, nu_t + (n_t - 3)/2, ..., nu_t - (n_t - 1)/2.
inline std::vector<std::complex<double>> shifted_upsilon(const LeviShape& shape,
                                                         const std::vector<std::complex<double>>& nu) {
  if (static_cast<int>(nu.size()) != shape.blocks()) {
    throw InvalidArgument("need one nu value per block");
  }
  std::complex<double> sum = 0.0;
  double scale = 1.0;
  for (int t = 0; t < shape.blocks(); ++t) {
    sum += static_cast<double>(shape.size(t)) * nu[t];
    scale = std::max(scale, std::abs(nu[t]) * shape.size(t));
  }
  if (std::abs(sum) > kSumTolerance * scale) throw NonZeroSum();
  std::vector<std::complex<double>> out(shape.n());
  for (int p = 1; p <= shape.n(); ++p) {
    out[p - 1] = nu[shape.block_of(p)] + 0.5 * shape.label2(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cut functions and block intertwining factors

/// Labels of block B (doubled, listed from the first position: decreasing)
/// and the cut f(b) in C* = {n_C/2, ..., -n_C/2}, also doubled:
/// sigma(b) > sigma(c) exactly when f(b) > c.
struct CutFunction {
  int n_b = 0;
  int n_c = 0;
  std::vector<int> b2;
  std::vector<int> f2;
};

inline CutFunction cut_function(const LeviShape& shape, const Permutation& sigma, int B, int C) {
  if (!(B < C)) throw OrderViolation();
  CutFunction cut{shape.size(B), shape.size(C), {}, {}};
  const int sb = shape.start(B);
  const int sc = shape.start(C);
  for (int pb = 0; pb < cut.n_b; ++pb) {
    const int value = sigma[sb + pb];
    // sigma decreases along C, so the c with sigma(c) < sigma(b) form a tail
    // of C; the first of them has the largest label among them.
    int f2 = -cut.n_c;
    for (int pc = 0; pc < cut.n_c; ++pc) {
      if (sigma[sc + pc] < value) {
        f2 = (cut.n_c - 1) - 2 * pc + 1;
        break;
      }
    }
    cut.b2.push_back((cut.n_b - 1) - 2 * pb);
    cut.f2.push_back(f2);
  }
  return cut;
}

/// One factor xi(epsilon z + m) / xi(z + m + j).
struct IntertwiningFactor {
  int m2 = 1;
  int j2 = 0;
  int epsilon = 1;

  double m() const { return 0.5 * m2; }
  double j() const { return 0.5 * j2; }
  friend bool operator==(const IntertwiningFactor&, const IntertwiningFactor&) = default;
};

struct BlockIntertwining {
  std::vector<IntertwiningFactor> factors;
};

/// Factors from a cut: m_b = 1/2 + |b - f(b)| and epsilon_b = -1 iff b < f(b).
/// Numerators sorted by m descending are matched with the denominator shifts
/// (n_B + n_C)/2 - t. Pairs with epsilon = +1 and j = 0 cancel and are omitted.
inline BlockIntertwining intertwining_from_cut(const CutFunction& cut) {
  std::vector<IntertwiningFactor> raw;
  for (std::size_t i = 0; i < cut.b2.size(); ++i) {
    const int diff2 = cut.b2[i] - cut.f2[i];
    IntertwiningFactor f;
    f.m2 = 1 + std::abs(diff2);
    f.epsilon = (diff2 < 0 && f.m2 != 1) ? -1 : 1;
    raw.push_back(f);
  }
  std::stable_sort(raw.begin(), raw.end(),
                   [](const IntertwiningFactor& a, const IntertwiningFactor& b) { return a.m2 > b.m2; });
  BlockIntertwining out;
  for (std::size_t t = 0; t < raw.size(); ++t) {
    IntertwiningFactor f = raw[t];
    f.j2 = cut.n_b + cut.n_c - 2 * static_cast<int>(t) - f.m2;
    if (f.epsilon == 1 && f.j2 == 0) continue;
    out.factors.push_back(f);
  }
  return out;
}

inline BlockIntertwining block_intertwining_factors(const LeviShape& shape, const Permutation& sigma,
                                                    int B, int C) {
  return intertwining_from_cut(cut_function(shape, sigma, B, C));
}

/// j >= 0, 1/2 <= m <= n, m + j pairwise distinct, epsilon = +1 when m = 1/2.
inline bool intertwining_invariants_hold(const BlockIntertwining& bi, int n) {
  std::set<int> sums;
  for (const auto& f : bi.factors) {
    if (f.j2 < 0 || f.m2 < 1 || f.m2 > 2 * n) return false;
    if (f.m2 == 1 && f.epsilon != 1) return false;
    if (!sums.insert(f.m2 + f.j2).second) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Brute-force lemma checks over nondecreasing maps B -> C*

/// Calls visit(f2) for every nondecreasing map from B (listed by increasing
/// label) into C*, values doubled.
inline void for_each_monotone_map(int n_b, int n_c, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> f2(n_b);
  auto rec = [&](auto&& self, int i, int lo) -> void {
    if (i == n_b) {
      visit(f2);
      return;
    }
    for (int v = lo; v <= n_c; v += 2) {
      f2[i] = v;
      self(self, i + 1, v);
    }
  };
  rec(rec, 0, -n_c);
}

/// Doubled labels of B in increasing order.
inline std::vector<int> increasing_labels2(int size) {
  std::vector<int> out;
  for (int i = 0; i < size; ++i) out.push_back(-(size - 1) + 2 * i);
  return out;
}

struct CoreLemmaReport {
  std::int64_t maps = 0;
  std::int64_t count_violations = 0;      // more than q + 1 solutions
  std::int64_t r_violations = 0;          // r_t > (n_B + n_C)/2 - t
  std::int64_t equality_mismatches = 0;   // equality for all q not matching f = +-n_C/2

  bool passed() const { return count_violations == 0 && r_violations == 0 && equality_mismatches == 0; }
  explicit operator bool() const { return passed(); }
};

/// For every nondecreasing f: B -> C* and q = 0, 1, ...: the count of b with
/// |b - f(b)| >= (n_B + n_C - 1)/2 - q is at most q + 1, and the sorted
/// r_t = 1/2 + |b - f(b)| satisfy r_t <= (n_B + n_C)/2 - t. Equality for all
/// q (q < n_B; beyond that q + 1 exceeds #B) happens exactly for f = +-n_C/2.
inline CoreLemmaReport verify_core_lemma(int n_b, int n_c) {
  if (n_b < 1 || n_c < n_b) throw InvalidArgument("need 1 <= n_B <= n_C");
  const auto b2 = increasing_labels2(n_b);
  CoreLemmaReport rep;
  for_each_monotone_map(n_b, n_c, [&](const std::vector<int>& f2) {
    ++rep.maps;
    std::vector<int> d2(n_b);
    for (int i = 0; i < n_b; ++i) d2[i] = std::abs(b2[i] - f2[i]);
    bool equality_everywhere = true;
    for (int q = 0; q <= n_b + n_c; ++q) {
      const int threshold2 = n_b + n_c - 1 - 2 * q;
      const auto hits = std::count_if(d2.begin(), d2.end(), [&](int d) { return d >= threshold2; });
      if (hits > q + 1) ++rep.count_violations;
      if (q < n_b && hits != q + 1) equality_everywhere = false;
    }
    std::vector<int> r2(n_b);
    for (int i = 0; i < n_b; ++i) r2[i] = 1 + d2[i];
    std::sort(r2.rbegin(), r2.rend());
    for (int t = 0; t < n_b; ++t) {
      if (r2[t] > n_b + n_c - 2 * t) ++rep.r_violations;
    }
    const bool extreme = std::all_of(f2.begin(), f2.end(), [&](int v) { return v == n_c; }) ||
                         std::all_of(f2.begin(), f2.end(), [&](int v) { return v == -n_c; });
    if (equality_everywhere != extreme) ++rep.equality_mismatches;
  });
  return rep;
}

/// For every threshold r, the largest number of b with |b - f(b)| >= r over
/// nondecreasing f is attained by some constant f. Returns the number of
/// thresholds where this fails.
inline std::int64_t verify_modification_lemma(int n_b, int n_c) {
  if (n_b < 1 || n_c < n_b) throw InvalidArgument("need 1 <= n_B <= n_C");
  const auto b2 = increasing_labels2(n_b);
  const int max_r2 = n_b + n_c;
  std::vector<std::int64_t> best_any(max_r2 + 1, 0), best_const(max_r2 + 1, 0);
  for_each_monotone_map(n_b, n_c, [&](const std::vector<int>& f2) {
    const bool constant = std::all_of(f2.begin(), f2.end(), [&](int v) { return v == f2[0]; });
    for (int r2 = 0; r2 <= max_r2; ++r2) {
      std::int64_t hits = 0;
      for (int i = 0; i < n_b; ++i) hits += std::abs(b2[i] - f2[i]) >= r2;
      best_any[r2] = std::max(best_any[r2], hits);
      if (constant) best_const[r2] = std::max(best_const[r2], hits);
    }
  });
  std::int64_t failures = 0;
  for (int r2 = 0; r2 <= max_r2; ++r2) failures += best_any[r2] != best_const[r2];
  return failures;
}

}  // namespace siegel
