#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "subalg/error.hpp"
#include "subalg/monomials.hpp"

using namespace subalg;
using subalg_test::Gen;

namespace {

std::vector<std::vector<int>> rows_of(const PowerMatrix& K) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < K.rows(); ++i) out.emplace_back(K.row(i).begin(), K.row(i).end());
  return out;
}

PowerMatrix two_one_box() { return enumerate_power_matrix(PowerVector{2, 1}); }

}  // namespace

TEST(PowerVector, RejectsNegativeExponents) {
  EXPECT_THROW(PowerVector({1, -1}), Error);
}

TEST(LexCompare, OrderAndHandCases) {
  EXPECT_EQ(lex_compare(PowerVector{2, 1}, PowerVector{2, 0}), std::strong_ordering::greater);
  EXPECT_EQ(lex_compare(PowerVector{1, 0}, PowerVector{1, 0}), std::strong_ordering::equal);
  EXPECT_EQ(lex_compare(PowerVector{1, 3}, PowerVector{2, 0}), std::strong_ordering::less);
}

TEST(LexCompare, LengthMismatchThrows) {
  try {
    (void)lex_compare(PowerVector{1, 2}, PowerVector{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
  }
}

TEST(LexCompare, TotalOrderProperties) {
  Gen g(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = g.size(1, 4);
    auto a = subalg_test::random_power_vector(g, n, 2);
    auto b = subalg_test::random_power_vector(g, n, 2);
    auto c = subalg_test::random_power_vector(g, n, 2);
    const auto ab = lex_compare(a, b);
    const auto ba = lex_compare(b, a);
    // antisymmetry
    EXPECT_EQ(ab == std::strong_ordering::greater, ba == std::strong_ordering::less);
    EXPECT_EQ(ab == std::strong_ordering::equal, a == b);
    // transitivity
    if (ab >= 0 && lex_compare(b, c) >= 0) EXPECT_TRUE(lex_compare(a, c) >= 0);
  }
}

TEST(EnumeratePowerMatrix, TwoOneBoxRows) {
  const PowerMatrix K = two_one_box();
  ASSERT_EQ(K.rows(), 6u);
  const std::vector<std::vector<int>> expect{{2, 1}, {2, 0}, {1, 1}, {1, 0}, {0, 1}, {0, 0}};
  EXPECT_EQ(rows_of(K), expect);
}

TEST(EnumeratePowerMatrix, SmallCases) {
  const PowerMatrix one = enumerate_power_matrix(PowerVector{0});
  ASSERT_EQ(one.rows(), 1u);
  EXPECT_EQ(one(0, 0), 0);

  const PowerMatrix cube = enumerate_power_matrix(PowerVector{1, 1, 1});
  ASSERT_EQ(cube.rows(), 8u);
  EXPECT_EQ(cube.row_vector(0), (PowerVector{1, 1, 1}));
  EXPECT_EQ(cube.row_vector(7), (PowerVector{0, 0, 0}));
}

TEST(EnumeratePowerMatrix, CapacityError) {
  try {
    (void)enumerate_power_matrix(PowerVector::uniform(21, 1), 1'000'000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Capacity);
  }
  EXPECT_EQ(bounded_power_count(PowerVector::uniform(200, 9)), std::numeric_limits<std::size_t>::max());
}

TEST(EnumeratePowerMatrix, SortedIsFixedPoint) {
  Gen g(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto kmax = subalg_test::random_power_vector(g, g.size(1, 4), 3);
    const PowerMatrix K = enumerate_power_matrix(kmax);
    auto rows = rows_of(K);
    EXPECT_EQ(rows.size(), bounded_power_count(kmax));
    auto sorted = rows;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      return lex_compare(std::span<const int>(a), std::span<const int>(b)) > 0;
    });
    EXPECT_EQ(rows, sorted);
    EXPECT_EQ(std::adjacent_find(rows.begin(), rows.end()), rows.end());
    for (const auto& r : rows)
      for (std::size_t j = 0; j < r.size(); ++j) EXPECT_LE(r[j], kmax[j]);
  }
}

TEST(PowerMatrix, FromRowsChecksOrder) {
  EXPECT_THROW(PowerMatrix::from_rows(2, {PowerVector{0, 1}, PowerVector{1, 0}}), Error);
  EXPECT_THROW(PowerMatrix::from_rows(2, {PowerVector{1, 0}, PowerVector{1, 0}}), Error);
  EXPECT_NO_THROW(PowerMatrix::from_rows(2, {PowerVector{1, 0}, PowerVector{0, 1}}));
}

TEST(PowerMatrix, FindLocatesRows) {
  const PowerMatrix K = two_one_box();
  for (std::size_t i = 0; i < K.rows(); ++i) EXPECT_EQ(K.find(K.row(i)), i);
  const std::vector<int> absent{3, 0};
  EXPECT_EQ(K.find(absent), K.rows());
}

TEST(EvalMonomialVector, HandValueAtTwoThree) {
  const Eigen::VectorXd v = eval_monomial_vector(Eigen::Vector2d(2, 3), two_one_box());
  Eigen::VectorXd expect(6);
  expect << 12, 4, 6, 2, 3, 1;
  EXPECT_EQ(v, expect);
}

TEST(EvalMonomialVector, ConstantAndIdentity) {
  const PowerMatrix zero = PowerMatrix::from_rows(2, {PowerVector{0, 0}});
  EXPECT_EQ(eval_monomial_vector(Eigen::Vector2d(0, 0), zero)(0), 1.0);
  EXPECT_EQ(eval_monomial_vector(Eigen::Vector2d(5, 7), PowerMatrix::identity(2)),
            Eigen::Vector2d(5, 7));
}

TEST(EvalMonomialVector, RejectsBadInput) {
  EXPECT_THROW(eval_monomial_vector(Eigen::Vector3d(1, 2, 3), two_one_box()), Error);
  EXPECT_THROW(eval_monomial_vector(Eigen::Vector2d(std::nan(""), 1), two_one_box()), Error);
}

TEST(EvalMonomialVector, MatchesPowOracle) {
  Gen g(13);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = g.size(1, 4);
    const PowerMatrix K = subalg_test::random_power_matrix(g, n, 10, 4);
    Eigen::VectorXd x = g.matrix(static_cast<Eigen::Index>(n), 1, -2, 2);
    const Eigen::VectorXd v = eval_monomial_vector(x, K);
    for (std::size_t i = 0; i < K.rows(); ++i) {
      const double ref = subalg_test::pow_monomial(x, std::vector<int>(K.row(i).begin(), K.row(i).end()));
      EXPECT_NEAR(v(static_cast<Eigen::Index>(i)), ref, 1e-13 * (1 + std::abs(ref)));
    }
  }
}

TEST(EvalMonomialVector, Multiplicativity) {
  Gen g(14);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = g.size(1, 4);
    const auto a = subalg_test::random_power_vector(g, n, 2);
    const auto b = subalg_test::random_power_vector(g, n, 2);
    std::vector<int> sum(n);
    for (std::size_t j = 0; j < n; ++j) sum[j] = a[j] + b[j];
    const Eigen::VectorXd x = g.matrix(static_cast<Eigen::Index>(n), 1, -3, 3);
    auto single = [&](const std::vector<int>& k) {
      return eval_monomial_vector(x, PowerMatrix::from_rows(n, {PowerVector(k)}))(0);
    };
    const std::vector<int> av(a.exponents().begin(), a.exponents().end());
    const std::vector<int> bv(b.exponents().begin(), b.exponents().end());
    const double lhs = single(sum);
    const double rhs = single(av) * single(bv);
    EXPECT_LE(std::abs(lhs - rhs), 8 * std::numeric_limits<double>::epsilon() * std::abs(lhs) + 1e-300);
  }
}

TEST(EvalMonomialVector, StackedMatrixConcatenates) {
  Gen g(15);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = g.size(1, 3);
    const PowerMatrix A = subalg_test::random_power_matrix(g, n, 6, 3);
    const PowerMatrix B = subalg_test::random_power_matrix(g, n, 6, 3);
    const PowerMatrix AB = merge_power_matrices(A, B);
    const Eigen::VectorXd x = g.matrix(static_cast<Eigen::Index>(n), 1);
    const Eigen::VectorXd vab = eval_monomial_vector(x, AB);
    const Eigen::VectorXd va = eval_monomial_vector(x, A);
    const Eigen::VectorXd vb = eval_monomial_vector(x, B);
    for (std::size_t i = 0; i < A.rows(); ++i)
      EXPECT_EQ(vab(static_cast<Eigen::Index>(AB.find(A.row(i)))), va(static_cast<Eigen::Index>(i)));
    for (std::size_t i = 0; i < B.rows(); ++i)
      EXPECT_EQ(vab(static_cast<Eigen::Index>(AB.find(B.row(i)))), vb(static_cast<Eigen::Index>(i)));
  }
}

TEST(BuildDataMatrix, ColumnsAreEvaluations) {
  Eigen::MatrixXd one(2, 1);
  one << 2, 3;
  Eigen::VectorXd expect(6);
  expect << 12, 4, 6, 2, 3, 1;
  EXPECT_EQ(build_data_matrix(one, two_one_box()).col(0), expect);

  const PowerMatrix zero = PowerMatrix::from_rows(2, {PowerVector{0, 0}});
  EXPECT_EQ(build_data_matrix(Eigen::MatrixXd::Random(2, 5), zero), Eigen::MatrixXd::Ones(1, 5));
  EXPECT_EQ(build_data_matrix(Eigen::MatrixXd::Identity(2, 2), PowerMatrix::identity(2)),
            Eigen::MatrixXd::Identity(2, 2));
  EXPECT_THROW(build_data_matrix(Eigen::MatrixXd(2, 0), zero), Error);

  Gen g(16);
  const PowerMatrix K = subalg_test::random_power_matrix(g, 3, 12, 3);
  const Eigen::MatrixXd S = g.matrix(3, 40);
  const Eigen::MatrixXd V = build_data_matrix(S, K);
  for (Eigen::Index k = 0; k < S.cols(); ++k) {
    EXPECT_EQ(V.col(k), eval_monomial_vector(Eigen::VectorXd(S.col(k)), K));
  }
}

TEST(PartitionPowerMatrix, TwoOneBoxBlocksOfThree) {
  const auto blocks = partition_power_matrix(two_one_box(), 3);
  ASSERT_EQ(blocks.size(), 2u);
  const std::vector<std::vector<int>> first{{1, 0}, {0, 1}, {0, 0}};
  const std::vector<std::vector<int>> second{{2, 1}, {2, 0}, {1, 1}};
  EXPECT_EQ(rows_of(blocks[0]), first);
  EXPECT_EQ(rows_of(blocks[1]), second);
}

TEST(PartitionPowerMatrix, DegenerateLimits) {
  const PowerMatrix K = two_one_box();
  const auto whole = partition_power_matrix(K, 6);
  ASSERT_EQ(whole.size(), 1u);
  EXPECT_EQ(whole[0], K);

  const auto singles = partition_power_matrix(K, 1);
  ASSERT_EQ(singles.size(), 6u);
  const std::vector<std::vector<int>> order{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {2, 1}};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(rows_of(singles[i]).front(), order[i]);
}

TEST(PartitionPowerMatrix, BlocksPermuteRows) {
  Gen g(17);
  for (int trial = 0; trial < 200; ++trial) {
    const PowerMatrix K = subalg_test::random_power_matrix(g, g.size(1, 4), 30, 3);
    const std::size_t limit = g.size(1, 10);
    const auto blocks = partition_power_matrix(K, limit);
    PowerMatrix merged(K.vars());
    int last_degree = -1;
    for (const auto& b : blocks) {
      EXPECT_LE(b.rows(), limit);
      int lo = 1 << 30;
      int hi = -1;
      for (std::size_t i = 0; i < b.rows(); ++i) {
        int d = 0;
        for (int e : b.row(i)) d += e;
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
      EXPECT_GE(lo, last_degree);
      last_degree = hi;
      merged = merge_power_matrices(merged, b);
    }
    EXPECT_EQ(merged, K);
    std::size_t total = 0;
    for (const auto& b : blocks) total += b.rows();
    EXPECT_EQ(total, K.rows());
  }
}
