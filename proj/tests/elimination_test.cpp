#include <gtest/gtest.h>

#include "factorkit/elimination.hpp"
#include "factorkit/random.hpp"
#include "oracles.hpp"
#include "worked_example.hpp"

namespace factorkit {
namespace {

TEST(GaussEliminate, ExampleGaussMatrix) {
  const EliminationRecord r = gauss_eliminate(example::a(), example::rhs_first());
  EXPECT_EQ(r.u(), example::u());
  ASSERT_TRUE(r.transformed_rhs().has_value());
  EXPECT_EQ(*r.transformed_rhs(), example::transformed_rhs_first());
}

TEST(GaussEliminate, ExampleMultipliers) {
  // Negated off-diagonal entries of the elimination matrices G_1, G_2, G_3.
  const DenseMatrix expected{{0, 0, 0, 0}, {-1, 0, 0, 0}, {0, 0.5, 0, 0}, {1, -0.5, 0.5, 0}};
  const EliminationRecord r = gauss_eliminate(example::a());
  EXPECT_EQ(r.multipliers(), expected);
  EXPECT_EQ(r.unit_lower(), example::l());
  EXPECT_EQ(matmul(r.unit_lower(), r.u()), example::a());
  EXPECT_FALSE(r.transformed_rhs().has_value());
}

TEST(GaussEliminate, InputsUnmodified) {
  const DenseMatrix a = example::a();
  const DenseMatrix b = example::rhs_first();
  (void)gauss_eliminate(a, b);
  EXPECT_EQ(a, example::a());
  EXPECT_EQ(b, example::rhs_first());
}

TEST(GaussEliminate, Identity) {
  const EliminationRecord r = gauss_eliminate(DenseMatrix::identity(5));
  EXPECT_EQ(r.u(), DenseMatrix::identity(5));
  EXPECT_EQ(r.multipliers(), DenseMatrix::zeros(5, 5));
}

TEST(GaussEliminate, ZeroLeadingPivot) {
  try {
    (void)gauss_eliminate(DenseMatrix{{0, 1}, {1, 0}});
    FAIL() << "expected ZeroPivot";
  } catch (const ZeroPivot& e) {
    EXPECT_EQ(e.site(), ZeroPivot::Site::Column);
    EXPECT_EQ(e.index(), 1u);
    EXPECT_EQ(e.pivot(), Scalar(0.0));
    EXPECT_NE(std::string(e.what()).find("column 1"), std::string::npos);
  }
}

TEST(GaussEliminate, LaterZeroPivot) {
  // Leading minor of order 2 vanishes: [[1,2],[2,4]].
  try {
    (void)gauss_eliminate(DenseMatrix{{1, 2, 0}, {2, 4, 1}, {0, 1, 1}});
    FAIL() << "expected ZeroPivot";
  } catch (const ZeroPivot& e) {
    EXPECT_EQ(e.index(), 2u);
  }
}

TEST(GaussEliminate, ZeroMatrix) { EXPECT_THROW((void)gauss_eliminate(DenseMatrix::zeros(3, 3)), ZeroPivot); }

TEST(GaussEliminate, ScaledThreshold) {
  // A pivot of 1e-20 in a matrix of unit scale is treated as zero ...
  EXPECT_THROW((void)gauss_eliminate(DenseMatrix{{1e-20, 1}, {1, 1}}), ZeroPivot);
  // ... but is a legitimate pivot when the whole matrix lives at that scale.
  EXPECT_NO_THROW((void)gauss_eliminate(DenseMatrix{{1e-20, 2e-20}, {3e-20, 1e-20}}));
}

TEST(GaussEliminate, Errors) {
  EXPECT_THROW((void)gauss_eliminate(DenseMatrix::zeros(2, 3)), NonSquare);
  EXPECT_THROW((void)gauss_eliminate(DenseMatrix::identity(3), DenseMatrix::zeros(2, 1)), ShapeMismatch);
}

TEST(GaussEliminate, FlopCount) {
  // Column l (0-based) touches n-l-1 rows: one division plus 2 flops for each
  // of the n-l-1 trailing matrix columns and k right-hand sides.
  const std::size_t n = 6, k = 2;
  std::uint64_t expected = 0;
  for (std::size_t l = 0; l < n; ++l) expected += (n - l - 1) * (1 + 2 * (n - l - 1 + k));
  MatrixGenerator gen(3);
  const EliminationRecord r = gauss_eliminate(gen.real_spd(n), gen.real_matrix(n, k));
  EXPECT_EQ(r.flops(), expected);
}

TEST(GaussEliminate, UpperTriangularUnchanged) {
  MatrixGenerator gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = gen.uniform_index(1, 12);
    std::vector<Scalar> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) e[i * n + j] = j == i ? 1.0 + gen.uniform01() : gen.uniform(-1, 1);
    const DenseMatrix u(n, n, std::move(e));
    const EliminationRecord r = gauss_eliminate(u);
    EXPECT_EQ(r.u(), u);
    EXPECT_EQ(r.multipliers(), DenseMatrix::zeros(n, n));
  }
}

TEST(GaussEliminate, LuIdentityOnRandomMatrices) {
  MatrixGenerator gen(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = gen.uniform_index(1, 50);
    const DenseMatrix a = trial % 2 ? gen.real_matrix(n, n) : gen.complex_matrix(n, n);
    const EliminationRecord r = gauss_eliminate(a);
    EXPECT_TRUE(r.u().is_upper_triangular());
    EXPECT_LE(relative_frobenius_error(matmul(r.unit_lower(), r.u()), a), 1e-11) << "n=" << n;
  }
}

TEST(GaussEliminate, TransformedRhsSolvesOriginalSystem) {
  MatrixGenerator gen(22);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = gen.uniform_index(1, 40), k = gen.uniform_index(1, 4);
    const DenseMatrix a = gen.real_spd(n);
    const DenseMatrix b = gen.real_matrix(n, k);
    const EliminationRecord r = gauss_eliminate(a, b);
    const DenseMatrix x = back_substitute(r.u(), *r.transformed_rhs());
    EXPECT_LE(residual_norm(a, x, b), 1e-10);
  }
}

TEST(GaussEliminate, SymmetryPropagatesThroughTrailingBlocks) {
  MatrixGenerator gen(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = gen.uniform_index(2, 20);
    const DenseMatrix a = trial % 2 ? gen.real_symmetric(n) : gen.complex_symmetric(n);
    std::size_t steps = 0;
    (void)gauss_eliminate(a, std::nullopt, [&](std::size_t step, const DenseMatrix& w) {
      ++steps;
      const std::size_t m = n - step;
      std::vector<Scalar> block;
      for (std::size_t i = step; i < n; ++i)
        for (std::size_t j = step; j < n; ++j) block.push_back(w(i, j));
      const DenseMatrix trailing(m, m, std::move(block));
      EXPECT_LE(trailing.symmetry_deviation().value, 1e-12 * std::max(1.0, trailing.max_abs()))
          << "n=" << n << " step=" << step;
    });
    EXPECT_EQ(steps, n - 1);
  }
}

TEST(GaussEliminate, DeterminantMatchesCofactorExpansion) {
  MatrixGenerator gen(24);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = gen.uniform_index(1, 5);
    const DenseMatrix a = trial % 2 ? gen.real_matrix(n, n) : gen.complex_matrix(n, n);
    const Scalar expected = oracle::cofactor_determinant(a);
    const Scalar det = gauss_eliminate(a).determinant();
    EXPECT_LE(std::abs(det - expected), 1e-10 * std::max(1.0, std::abs(expected))) << "n=" << n;
  }
}

TEST(BackSubstitute, ExampleSystems) {
  EXPECT_EQ(back_substitute(example::u(), example::transformed_rhs_first()), example::x_first());
  EXPECT_EQ(back_substitute(example::g(), example::y_second()), example::x_second());
  const DenseMatrix c = DenseMatrix::column({1, -2, 3});
  EXPECT_EQ(back_substitute(DenseMatrix::identity(3), c), c);
}

TEST(BackSubstitute, ZeroDiagonal) {
  try {
    (void)back_substitute(DenseMatrix{{1, 1}, {0, 0}}, DenseMatrix::column({1, 1}));
    FAIL();
  } catch (const ZeroPivot& e) {
    EXPECT_EQ(e.site(), ZeroPivot::Site::Row);
    EXPECT_EQ(e.index(), 2u);
  }
}

TEST(BackSubstitute, RejectsNonTriangular) {
  EXPECT_THROW((void)back_substitute(DenseMatrix{{1, 0}, {1, 1}}, DenseMatrix::column({1, 1})), ShapeMismatch);
}

TEST(ForwardSubstitute, ExampleSystems) {
  EXPECT_EQ(forward_substitute(transpose(example::g()), example::rhs_second()), example::y_second());
  const DenseMatrix c = DenseMatrix::column({1, -2, 3});
  EXPECT_EQ(forward_substitute(DenseMatrix::identity(3), c), c);
  // L y = b reproduces the elimination's B'.
  EXPECT_EQ(forward_substitute(example::l(), example::rhs_first(), Diagonal::Unit), example::transformed_rhs_first());
  EXPECT_EQ(forward_substitute(example::l(), example::rhs_first()), example::transformed_rhs_first());
}

TEST(ForwardSubstitute, ZeroDiagonal) {
  try {
    (void)forward_substitute(DenseMatrix{{0, 0}, {1, 1}}, DenseMatrix::column({1, 1}));
    FAIL();
  } catch (const ZeroPivot& e) {
    EXPECT_EQ(e.index(), 1u);
  }
  // A unit diagonal is never read.
  EXPECT_NO_THROW((void)forward_substitute(DenseMatrix{{0, 0}, {1, 0}}, DenseMatrix::column({1, 1}), Diagonal::Unit));
}

TEST(Substitution, FlopCounts) {
  const std::size_t n = 7, k = 3;
  MatrixGenerator gen(5);
  const EliminationRecord r = gauss_eliminate(gen.real_spd(n));
  const DenseMatrix c = gen.real_matrix(n, k);
  EXPECT_EQ(back_substitute_counted(r.u(), c).flops, k * n * n);
  EXPECT_EQ(forward_substitute_counted(r.unit_lower(), c).flops, k * n * n);
  EXPECT_EQ(forward_substitute_counted(r.unit_lower(), c, Diagonal::Unit).flops, k * (n * n - n));
}

}  // namespace
}  // namespace factorkit
