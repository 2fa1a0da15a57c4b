#include <gtest/gtest.h>

#include <cmath>

#include "siegel/reduction.hpp"
#include "siegel/sampling.hpp"
#include "support.hpp"

using namespace siegel;
using siegel::testing::expect_worst_case_bound;
using siegel::testing::rows2;
using siegel::testing::same_lattice;

TEST(SizeReduce, SubtractsNearestMultiple) {
  const Basis out = size_reduce(Basis(rows2(1, 0.6, 0, 1)));
  EXPECT_TRUE(out.rows().isApprox(rows2(1, -0.4, 0, 1)));
}

TEST(SizeReduce, ReducedInputUnchanged) {
  const Basis in(rows2(1, 0.3, 0, 1));
  EXPECT_EQ(size_reduce(in), in);
}

TEST(SizeReduce, ThreeDimensional) {
  Matrix m(3, 3);
  m << 5, 3, 1, 0, 1, 0.7, 0, 0, 1;
  const Basis in(m);
  const Basis out = size_reduce(in);
  const auto g0 = gram_schmidt(in), g1 = gram_schmidt(out);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(g1.norms(i), g0.norms(i), 1e-12 * g0.norms(i));
    for (int j = i + 1; j < 3; ++j) EXPECT_LE(std::abs(g1.coeff(j, i)), 0.5 + 1e-12);
  }
  EXPECT_TRUE(same_lattice(out, in));
}

TEST(SizeReduceProperty, IdempotentAndNormPreserving) {
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng(RngSeed{21, k});
    const int n = 2 + static_cast<int>(k % 7);
    const Basis in = scramble_basis(sample_unimodular_lattice(n, rng), n, rng);
    const Basis once = size_reduce(in);
    const auto g0 = gram_schmidt(in), g1 = gram_schmidt(once);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(g1.norms(i), g0.norms(i), 1e-12 * g0.norms(i));
    const Basis twice = size_reduce(once);
    EXPECT_LE((twice.rows() - once.rows()).cwiseAbs().maxCoeff(), 1e-12 * once.rows().cwiseAbs().maxCoeff());
    EXPECT_TRUE(same_lattice(once, in));
  }
}

TEST(Lll, ParameterFromDelta) {
  EXPECT_NEAR(lll_parameter(0.75), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(lll_parameter(0.99), 1 / std::sqrt(0.74), 1e-15);
  EXPECT_THROW(lll_parameter(0.25), InvalidArgument);
  EXPECT_THROW(lll_parameter(1.0), InvalidArgument);
}

TEST(Lll, SkewBasisOfZ2) {
  const Basis in(rows2(1, 0, 1001, 1));
  const auto rep = lll_reduce(in, 0.99);
  EXPECT_NEAR(covolume(rep.output), 1, 1e-12);
  EXPECT_TRUE(is_siegel_reduced(rep.output, 1 / std::sqrt(0.74)));
  EXPECT_TRUE(same_lattice(rep.output, in));
  EXPECT_GT(rep.output.determinant(), 0);
  EXPECT_TRUE((rep.transform * in.rows()).isApprox(rep.output.rows()));
}

TEST(Lll, ReducedInputNeedsNoSwaps) {
  const Basis in(rows2(1.2, 0.3, 0, 1));
  ASSERT_TRUE(is_siegel_reduced(in, lll_parameter(0.99)));
  const auto rep = lll_reduce(in, 0.99);
  EXPECT_EQ(rep.swaps, 0u);
  EXPECT_EQ(rep.output, size_reduce(in));
}

TEST(Lll, PreservesOrientation) {
  Matrix m = rows2(0, 1, 1, 0);
  EXPECT_LT(lll_reduce(Basis(m)).output.determinant(), 0);
  m = rows2(3, 1, 1, 0);
  EXPECT_LT(lll_reduce(Basis(m)).output.determinant(), 0);
}

TEST(Lll, QualityRatioExamples) {
  EXPECT_NEAR(quality_ratio(Basis::identity(2), 4.0 / 3.0), std::sqrt(0.75), 1e-15);
  EXPECT_NEAR(quality_ratio(Basis::identity(5), 1.0), 1, 1e-15);
}

TEST(LllProperty, PostconditionAndLatticeAcrossDelta) {
  for (double delta : {0.3, 0.5, 0.75, 0.9, 0.99, 0.999}) {
    const double T = lll_parameter(delta);
    for (std::uint64_t k = 0; k < 40; ++k) {
      Rng rng(RngSeed{31, k});
      const int n = 2 + static_cast<int>(k % 11);
      const Basis in = scramble_basis(sample_unimodular_lattice(n, rng), n, rng);
      const auto rep = lll_reduce(in, delta);
      EXPECT_TRUE(is_siegel_reduced(rep.output, T));
      EXPECT_TRUE(same_lattice(rep.output, in));
      EXPECT_LE(rep.quality_ratio, 1 + kTolerance);
      EXPECT_NEAR(rep.energy, energy(rep.output), 1e-9 * rep.energy);
      expect_worst_case_bound(rep.output, T);
      const Matrix u = rep.transform;
      EXPECT_EQ(u, u.array().round().matrix());
      EXPECT_NEAR(std::abs(u.determinant()), 1, 1e-9);
    }
  }
}

TEST(LllProperty, ScrambledZ2ReducesToZ2) {
  for (std::uint64_t k = 0; k < 50; ++k) {
    Rng rng(RngSeed{41, k});
    const Basis in = scramble_basis(Basis::identity(2), 5 + static_cast<int>(k % 10), rng);
    const auto rep = lll_reduce(in, 0.75);
    EXPECT_TRUE(is_siegel_reduced(rep.output, std::sqrt(2.0)));
    EXPECT_TRUE(same_lattice(rep.output, Basis::identity(2)));
  }
}

TEST(LllProperty, Deterministic) {
  Rng a(RngSeed{5, 5}), b(RngSeed{5, 5});
  const Basis x = scramble_basis(sample_unimodular_lattice(10, a), 10, a);
  const Basis y = scramble_basis(sample_unimodular_lattice(10, b), 10, b);
  EXPECT_EQ(lll_reduce(x).output, lll_reduce(y).output);
}
