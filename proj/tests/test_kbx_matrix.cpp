#include <kbonacci/kbx_matrix.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace kbonacci;

namespace {

struct Shape {
  int k;
  int r;
};

// Every (k, r) with k in [2,4] and k^r <= 27.
std::vector<Shape> small_shapes() {
  std::vector<Shape> out;
  for (int k = 2; k <= 4; ++k)
    for (int r = 1; r <= 3; ++r)
      if (matrix_order(SequenceOrder(k), r) <= 27) out.push_back({k, r});
  return out;
}

}  // namespace

TEST(BuildBase, Examples) {
  EXPECT_EQ(build_base(SequenceOrder(2), 1), (SquareMatrix{{1, 1}, {1, 0}}));
  EXPECT_EQ(build_base(SequenceOrder(3), 3), (SquareMatrix{{4, 2, 1}, {2, 1, 1}, {1, 1, 0}}));
  EXPECT_EQ(build_base(SequenceOrder(2), 0), SquareMatrix::identity(2));
}

TEST(BuildBase, NegativeIndexUsesBackwardTerms) {
  const auto m = build_base(SequenceOrder(3), -4);
  for (std::size_t l = 0; l < 3; ++l)
    for (std::size_t u = 0; u < 3; ++u)
      EXPECT_EQ(m(l, u), oracle::kbonacci(3, -4 + 3 - static_cast<long>(l + u + 2) + 1));
}

TEST(BuildHigher, Examples) {
  const SequenceOrder two(2);
  const auto m = build_higher(two, 2, 1);
  const auto grid = decompose(m, 2);
  EXPECT_EQ(grid.at(0, 0), build_base(two, 2));
  EXPECT_EQ(grid.at(0, 1), build_base(two, 1));
  EXPECT_EQ(grid.at(1, 0), build_base(two, 1));
  EXPECT_EQ(grid.at(1, 1), build_base(two, 0));
  EXPECT_EQ(build_higher(SequenceOrder(3), 1, 0), build_base(SequenceOrder(3), 0));
}

TEST(BuildHigher, RejectsBadLevel) { EXPECT_THROW(build_higher(SequenceOrder(2), 0, 1), std::invalid_argument); }

TEST(BuildHigher, MatchesMultiIndexOracle) {
  for (const auto [k, r] : small_shapes()) {
    for (TermIndex j = -6; j <= 12; ++j) {
      ASSERT_EQ(build_higher(SequenceOrder(k), r, j), oracle::multi_index_matrix(k, r, j))
          << "k=" << k << " r=" << r << " j=" << j;
    }
  }
}

TEST(BuildHigher, ShiftLaw) {
  for (const auto [k, r] : small_shapes()) {
    const SequenceOrder order(k);
    const auto q = build_q(order, r);
    for (TermIndex j = -6; j <= 12; ++j) {
      EXPECT_EQ(build_higher(order, r, j) * q, build_higher(order, r, j + 1)) << "k=" << k << " r=" << r << " j=" << j;
    }
  }
}

TEST(BuildHigher, RecurrenceLaw) {
  for (const auto [k, r] : small_shapes()) {
    const SequenceOrder order(k);
    for (TermIndex j = -6; j <= 12; ++j) {
      SquareMatrix sum(matrix_order(order, r));
      for (int n = 0; n < k; ++n) sum += build_higher(order, r, j + n);
      EXPECT_EQ(sum, build_higher(order, r, j + k)) << "k=" << k << " r=" << r << " j=" << j;
    }
  }
}

TEST(BuildHigher, Symmetric) {
  for (const auto [k, r] : small_shapes())
    for (TermIndex j = -3; j <= 5; ++j) EXPECT_TRUE(build_higher(SequenceOrder(k), r, j).is_symmetric());
  for (int r = 1; r <= 3; ++r)
    for (TermIndex j = -3; j <= 5; ++j) EXPECT_TRUE(build_lucas(r, j).is_symmetric());
}

TEST(MultiIndex, PositionalEncodingRoundTrip) {
  const SequenceOrder k(3);
  for (std::size_t row = 0; row < 27; ++row) {
    for (std::size_t col = 0; col < 27; col += 5) {
      const auto mi = MultiIndex::from_flat(k, 3, row, col);
      EXPECT_EQ(mi.flat_row(k), row);
      EXPECT_EQ(mi.flat_col(k), col);
    }
  }
  // Row 1 (0-based) at r = 2 is (lambda_1, lambda_2) = (1, 2).
  const auto mi = MultiIndex::from_flat(SequenceOrder(2), 2, 1, 0);
  EXPECT_EQ(mi.rows, (std::vector<int>{1, 2}));
  EXPECT_EQ(mi.index_offset(SequenceOrder(2)), (2 - 1 - 1 + 1) + (2 - 2 - 1 + 1));
}

TEST(BuildLucas, Examples) {
  EXPECT_EQ(build_lucas(1, 1), (SquareMatrix{{3, 1}, {1, 2}}));
  EXPECT_EQ(build_lucas(1, 2) + build_lucas(1, 4), ExactInt(5) * build_base(SequenceOrder(2), 3));
  EXPECT_EQ(decompose(build_lucas(2, 1), 2).at(0, 0), build_lucas(1, 2));
  EXPECT_THROW(build_lucas(0, 1), std::invalid_argument);
}

TEST(BuildLucas, MatchesMultiIndexOracle) {
  for (int r = 1; r <= 4; ++r)
    for (TermIndex j = -6; j <= 10; ++j)
      EXPECT_EQ(build_lucas(r, j), oracle::multi_index_matrix(2, r, j, true)) << "r=" << r << " j=" << j;
}

TEST(BuildQ, Examples) {
  EXPECT_EQ(build_q(SequenceOrder(2), 1), (SquareMatrix{{1, 1}, {1, 0}}));
  EXPECT_EQ(build_q(SequenceOrder(3), 1), (SquareMatrix{{1, 1, 0}, {1, 0, 1}, {1, 0, 0}}));
  EXPECT_EQ(build_q(SequenceOrder(2), 2),
            (SquareMatrix{{1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}}));
}

TEST(BuildQ, BlockPattern) {
  const SequenceOrder k(3);
  const auto grid = decompose(build_q(k, 2), 3);
  const auto i3 = SquareMatrix::identity(3);
  const auto o3 = SquareMatrix::zero(3);
  for (std::size_t l = 0; l < 3; ++l)
    for (std::size_t u = 0; u < 3; ++u) EXPECT_EQ(grid.at(l, u), (u == 0 || u == l + 1) ? i3 : o3);
}

TEST(FastF, Examples) {
  EXPECT_EQ(fast_f(SequenceOrder(2), 1, 5), (SquareMatrix{{8, 5}, {5, 3}}));
  EXPECT_EQ(fast_f(SequenceOrder(3), 1, 4), build_base(SequenceOrder(3), 4));
  EXPECT_EQ(fast_f(SequenceOrder(2), 2, 1), build_higher(SequenceOrder(2), 2, 1));
}

TEST(FastF, DomainStartsAtOne) {
  EXPECT_THROW(fast_f(SequenceOrder(2), 1, 0), std::out_of_range);
  EXPECT_THROW(fast_f(SequenceOrder(2), 1, -3), std::out_of_range);
}

TEST(FastF, MatchesBuildHigher) {
  for (const auto [k, r] : small_shapes())
    for (TermIndex j = 1; j <= 12; ++j)
      EXPECT_EQ(fast_f(SequenceOrder(k), r, j), build_higher(SequenceOrder(k), r, j))
          << "k=" << k << " r=" << r << " j=" << j;
}

TEST(FastTerm, Examples) {
  EXPECT_EQ(fast_term(SequenceOrder(2), 10), 55);
  EXPECT_EQ(fast_term(SequenceOrder(3), 6), 7);
  EXPECT_EQ(fast_term(SequenceOrder(2), 1), 1);
  EXPECT_EQ(fast_term(SequenceOrder(4), 0), 0);
  EXPECT_THROW(fast_term(SequenceOrder(2), -1), std::invalid_argument);
}

TEST(FastTerm, MatchesTerm) {
  for (int k = 2; k <= 5; ++k) {
    const SequenceOrder order(k);
    for (TermIndex j = 0; j <= 2000; ++j) ASSERT_EQ(fast_term(order, j), term(order, j)) << "k=" << k << " j=" << j;
  }
}

TEST(MatrixSpec, Validation) {
  EXPECT_NO_THROW((MatrixSpec{Family::F, SequenceOrder(3), 2, 4}.validate()));
  EXPECT_THROW((MatrixSpec{Family::L, SequenceOrder(3), 1, 4}.validate()), std::invalid_argument);
  EXPECT_THROW((MatrixSpec{Family::F, SequenceOrder(2), 0, 4}.validate()), std::invalid_argument);
  EXPECT_THROW((MatrixSpec{Family::F, SequenceOrder(2), 1, std::nullopt}.validate()), std::invalid_argument);
  EXPECT_EQ((MatrixSpec{Family::Q, SequenceOrder(3), 2, std::nullopt}.dim()), 9u);
  EXPECT_EQ(build(MatrixSpec{Family::Q, SequenceOrder(2), 1, std::nullopt}), build_q(SequenceOrder(2), 1));
  EXPECT_EQ(parse_family("l"), Family::L);
  EXPECT_THROW(parse_family("X"), std::invalid_argument);
}
