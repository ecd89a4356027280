#include "qldpc/gf2.h"

#include <set>

#include <gtest/gtest.h>

#include "qldpc/codes.h"
#include "test_util.h"

using namespace qldpc;
using qldpc::testing::random_matrix;
using qldpc::testing::random_vector;

namespace {

// 2^rank = number of distinct vectors in the row span, by enumeration.
std::size_t brute_force_rank(const BinMatrix& a) {
  std::set<std::string> span;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << a.rows()); ++mask) {
    BinVector v(a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if ((mask >> r) & 1U) v ^= a.row(r);
    }
    span.insert(v.to_string());
  }
  std::size_t rank = 0;
  while ((std::size_t{1} << rank) < span.size()) ++rank;
  return rank;
}

}  // namespace

TEST(BinVector, PaddingStaysZero) {
  BinVector v(70);
  v.set(69);
  v.flip(3);
  EXPECT_EQ(v.weight(), 2U);
  EXPECT_EQ(v.words()[1] >> 6, 0U);
  EXPECT_EQ(v.support(), (std::vector<std::size_t>{3, 69}));
  EXPECT_THROW(v ^= BinVector(71), std::invalid_argument);
}

TEST(BinMatrix, EmptyShapesAreLegal) {
  BinMatrix a(0, 5);
  BinMatrix b(5, 0);
  EXPECT_EQ(rank(a), 0U);
  EXPECT_EQ(rank(b), 0U);
  EXPECT_EQ(kernel_basis(a).rows(), 5U);
  EXPECT_EQ(kernel_basis(b).rows(), 0U);
  EXPECT_EQ(mul(b, a).rows(), 5U);
  EXPECT_TRUE(mul(b, a).is_zero());
  EXPECT_EQ(mul(a, b).rows(), 0U);
  EXPECT_TRUE(in_rowspace(a, BinVector(5)));
  EXPECT_FALSE(in_rowspace(a, BinVector::from_bits({0, 1, 0, 0, 0})));
}

TEST(Mul, IdentityAndPermutationInverse) {
  EXPECT_EQ(mul(BinMatrix::identity(3), BinMatrix::identity(3)), BinMatrix::identity(3));
  BinMatrix s3 = shift_matrix(3);
  EXPECT_EQ(mul(s3, s3.transpose()), BinMatrix::identity(3));
}

TEST(Mul, DimensionMismatchNamesBothShapes) {
  try {
    mul(BinMatrix(2, 3), BinMatrix(4, 2));
    FAIL();
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("2x3"), std::string::npos);
    EXPECT_NE(msg.find("4x2"), std::string::npos);
  }
}

TEST(Mul, CssConditionHoldsForBb72) {
  CssCode code = build_code(builtin_code_spec("bb72"));
  EXPECT_TRUE(mul(code.hx, code.hz.transpose()).is_zero());
}

TEST(Mul, AssociativeAndGramSymmetric) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    BinMatrix a = random_matrix(5, 7, rng);
    BinMatrix b = random_matrix(7, 6, rng);
    BinMatrix c = random_matrix(6, 4, rng);
    EXPECT_EQ(mul(mul(a, b), c), mul(a, mul(b, c)));
    BinMatrix g = mul(a, a.transpose());
    EXPECT_EQ(g, g.transpose());
  }
}

TEST(MatVec, Basics) {
  Rng rng(2);
  BinMatrix a = random_matrix(4, 9, rng);
  EXPECT_TRUE(mat_vec(a, BinVector(9)).is_zero());
  EXPECT_EQ(mat_vec(shift_matrix(3), BinVector::from_bits({1, 0, 0})),
            BinVector::from_bits({0, 0, 1}));
  BinMatrix hx = build_code(builtin_code_spec("bb72")).hx;
  BinMatrix cols = hx.transpose();
  for (std::size_t j = 0; j < hx.cols(); ++j) {
    BinVector e(hx.cols());
    e.set(j);
    EXPECT_EQ(mat_vec(hx, e), cols.row(j));
  }
  EXPECT_THROW(mat_vec(a, BinVector(8)), std::invalid_argument);
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(BinMatrix::identity(4)), 4U);
  CssCode code = build_code(builtin_code_spec("bb72"));
  // Frozen from an independent elimination over integer bitmasks.
  EXPECT_EQ(rank(code.hx), 30U);
  EXPECT_EQ(rank(code.hz), 30U);
  EXPECT_EQ(rank(code.hx) + rank(code.hz), 60U);
  BinMatrix dup = BinMatrix::from_rows({{1, 0, 1}, {0, 1, 0}, {1, 0, 1}});
  EXPECT_LT(rank(dup), dup.rows());
}

TEST(Rank, MatchesEnumerationAndTranspose) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t rows = 1 + rng.below(8);
    std::size_t cols = 1 + rng.below(10);
    BinMatrix a = random_matrix(rows, cols, rng, 0.3 + 0.4 * rng.uniform());
    std::size_t r = rank(a);
    EXPECT_EQ(r, brute_force_rank(a));
    EXPECT_EQ(r, rank(a.transpose()));
    EXPECT_EQ(r + kernel_basis(a).rows(), cols);
  }
}

TEST(Solve, Examples) {
  auto res = solve(BinMatrix::identity(3), BinVector::from_bits({1, 0, 1}));
  ASSERT_TRUE(res.x);
  EXPECT_EQ(*res.x, BinVector::from_bits({1, 0, 1}));
  EXPECT_EQ(res.pivots, (std::vector<std::size_t>{0, 1, 2}));

  Rng rng(5);
  BinMatrix a = random_matrix(4, 6, rng);
  auto zero = solve(a, BinVector(4));
  ASSERT_TRUE(zero.x);
  EXPECT_TRUE(zero.x->is_zero());

  BinMatrix rank_deficient = BinMatrix::from_rows({{1, 1}, {1, 1}});
  EXPECT_FALSE(solve(rank_deficient, BinVector::from_bits({1, 0})).x);
  EXPECT_THROW(solve(a, BinVector(5)), std::invalid_argument);
}

TEST(Solve, FullRankSixByNine) {
  Rng rng(17);
  int found = 0;
  while (found < 100) {
    BinMatrix a = random_matrix(6, 9, rng);
    if (rank(a) != 6) continue;
    ++found;
    BinVector x0 = random_vector(9, rng);
    BinVector s = mat_vec(a, x0);
    auto res = solve(a, s);
    ASSERT_TRUE(res.x);
    EXPECT_EQ(mat_vec(a, *res.x), s);
  }
}

TEST(Solve, ThousandRandomConsistentSystems) {
  Rng rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t rows = 1 + rng.below(20);
    std::size_t cols = 1 + rng.below(90);
    BinMatrix a = random_matrix(rows, cols, rng, 0.2 + 0.5 * rng.uniform());
    BinVector s = mat_vec(a, random_vector(cols, rng));
    auto res = solve(a, s);
    ASSERT_TRUE(res.x);
    ASSERT_EQ(mat_vec(a, *res.x), s);
    // Pivots are strictly increasing and non-pivot variables are zero.
    for (std::size_t i = 1; i < res.pivots.size(); ++i) EXPECT_LT(res.pivots[i - 1], res.pivots[i]);
    for (std::size_t j : res.x->support()) {
      EXPECT_NE(std::find(res.pivots.begin(), res.pivots.end(), j), res.pivots.end());
    }
  }
}

TEST(KernelBasis, Examples) {
  EXPECT_EQ(kernel_basis(BinMatrix::identity(3)).rows(), 0U);
  BinMatrix k = kernel_basis(BinMatrix::from_rows({{1, 1}}));
  ASSERT_EQ(k.rows(), 1U);
  EXPECT_EQ(k.row(0), BinVector::from_bits({1, 1}));
  CssCode code = build_code(builtin_code_spec("bb72"));
  BinMatrix kx = kernel_basis(code.hx);
  EXPECT_EQ(kx.rows(), 42U);
  EXPECT_TRUE(mul(code.hx, kx.transpose()).is_zero());
  EXPECT_EQ(rank(kx), 42U);
}

TEST(InRowspace, Examples) {
  Rng rng(8);
  BinMatrix a = random_matrix(3, 5, rng);
  EXPECT_TRUE(in_rowspace(a, BinVector(5)));
  EXPECT_TRUE(in_rowspace(BinMatrix::identity(2), BinVector::from_bits({1, 1})));
  CssCode code = build_code(builtin_code_spec("bb72"));
  EXPECT_TRUE(in_rowspace(code.hz, code.hz.row(3) ^ code.hz.row(17)));
  EXPECT_THROW(in_rowspace(a, BinVector(4)), std::invalid_argument);
}

TEST(InRowspace, AgreesWithRankTest) {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t rows = 1 + rng.below(6);
    std::size_t cols = 1 + rng.below(8);
    BinMatrix a = random_matrix(rows, cols, rng, 0.4);
    BinVector v = random_vector(cols, rng, 0.4);
    bool expected = rank(a) == rank(vstack(a, BinMatrix::from_row_vectors(cols, {v})));
    EXPECT_EQ(in_rowspace(a, v), expected);
  }
}

TEST(Kron, Examples) {
  EXPECT_EQ(kron(BinMatrix::identity(2), BinMatrix::identity(3)), BinMatrix::identity(6));
  EXPECT_EQ(kron(shift_matrix(2), BinMatrix::identity(1)), shift_matrix(2));
  BinMatrix x = kron(shift_matrix(3), BinMatrix::identity(2));
  BinMatrix y = kron(BinMatrix::identity(3), shift_matrix(2));
  EXPECT_EQ(mul(x, y), mul(y, x));
  // Hand-expanded: x*y sends row (i, j) to column ((i+1) mod 3, (j+1) mod 2).
  BinMatrix xy(6, 6);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 2; ++j) xy.set(i * 2 + j, ((i + 1) % 3) * 2 + (j + 1) % 2);
  }
  EXPECT_EQ(mul(x, y), xy);
}

TEST(ShiftMatrix, Examples) {
  EXPECT_EQ(shift_matrix(1), BinMatrix::identity(1));
  EXPECT_EQ(shift_matrix(3), BinMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
  BinMatrix s5 = shift_matrix(5);
  BinMatrix power = BinMatrix::identity(5);
  for (int i = 0; i < 5; ++i) {
    power = mul(power, s5);
    if (i < 4) {
      EXPECT_NE(power, BinMatrix::identity(5));
    }
  }
  EXPECT_EQ(power, BinMatrix::identity(5));
  EXPECT_THROW(shift_matrix(0), std::invalid_argument);
}

TEST(ShiftMatrix, IsPermutation) {
  for (std::size_t l = 1; l < 20; ++l) {
    BinMatrix s = shift_matrix(l);
    for (std::size_t r = 0; r < l; ++r) EXPECT_EQ(s.row_weight(r), 1U);
    for (std::size_t r = 0; r < l; ++r) EXPECT_EQ(s.transpose().row_weight(r), 1U);
    EXPECT_EQ(shift_matrix_power(l, 3), mul(mul(s, s), s));
  }
}

TEST(Inverse, RoundTrip) {
  Rng rng(99);
  int done = 0;
  while (done < 50) {
    BinMatrix a = random_matrix(7, 7, rng);
    auto inv = inverse(a);
    if (rank(a) < 7) {
      EXPECT_FALSE(inv);
      continue;
    }
    ASSERT_TRUE(inv);
    EXPECT_EQ(mul(a, *inv), BinMatrix::identity(7));
    ++done;
  }
}
