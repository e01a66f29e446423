#pragma once

// k-bonacci matrices of order k^r, Lucas matrices of order 2^r, the block
// companion Q_k^r, and the O(log j) evaluation path built on it.
//
// Order k:   F_j(lambda, mu) = f_{j + k - lambda - mu + 1},  1 <= lambda, mu <= k.
// Order k^r: a k x k grid whose (lambda, mu) block is the order k^{r-1}
//            matrix at index j + k - lambda - mu + 1.
// Unrolled, the entry at row digits (l_1..l_r) and column digits (m_1..m_r)
// is f_{j + sum_t (k - l_t - m_t + 1)}.

#include <kbonacci/matrix.hpp>
#include <kbonacci/sequence.hpp>

#include <optional>
#include <string>
#include <vector>

namespace kbonacci {

enum class Family { F, L, Q };

std::string to_string(Family f);
/// Accepts "F", "L", "Q" (case-insensitive). Throws std::invalid_argument.
Family parse_family(const std::string& s);

struct MatrixSpec {
  Family family = Family::F;
  SequenceOrder k{2};
  int r = 1;
  std::optional<TermIndex> j;  // absent for Q

  /// Throws std::invalid_argument when the spec names no constructible matrix.
  void validate() const;
  std::size_t dim() const;
};

// Per-level row/column digits, each in 1..k; level 1 is the outermost block.
struct MultiIndex {
  std::vector<int> rows;
  std::vector<int> cols;

  static MultiIndex from_flat(SequenceOrder k, int r, std::size_t row, std::size_t col);
  std::size_t flat_row(SequenceOrder k) const;
  std::size_t flat_col(SequenceOrder k) const;
  /// Offset added to j: sum_t (k - rows[t] - cols[t] + 1).
  TermIndex index_offset(SequenceOrder k) const;
};

/// k^r without overflow; throws std::invalid_argument past 2^24 rows.
std::size_t matrix_order(SequenceOrder k, int r);

SquareMatrix build_base(SequenceOrder k, TermIndex j);
SquareMatrix build_higher(SequenceOrder k, int r, TermIndex j);

/// Lucas matrix of order 2^r: [[L_{j+1}, L_j], [L_j, L_{j-1}]] at r = 1,
/// blocks at index j + 3 - lambda - mu above that.
SquareMatrix build_lucas(int r, TermIndex j);

/// Block companion: block (lambda, 1) = I, block (lambda, lambda + 1) = I,
/// all other blocks zero; blocks have order k^{r-1}.
SquareMatrix build_q(SequenceOrder k, int r);

/// F_1 * Q^{j-1}. Throws std::out_of_range for j < 1.
SquareMatrix fast_f(SequenceOrder k, int r, TermIndex j);

/// f_j read off the order-k power path. Throws std::invalid_argument for j < 0.
ExactInt fast_term(SequenceOrder k, TermIndex j);

SquareMatrix build(const MatrixSpec& spec);

}  // namespace kbonacci
