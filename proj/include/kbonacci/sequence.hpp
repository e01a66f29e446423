#pragma once

// k-bonacci, Fibonacci and Lucas terms at any integer index.
//
// The k-bonacci numbers are seeded f_0 = ... = f_{k-2} = 0, f_{k-1} = 1 and
// extended forward by f_j = f_{j-1} + ... + f_{j-k}. Running the same
// recurrence in reverse, f_{j-k} = f_j - (f_{j-1} + ... + f_{j-k+1}), gives
// the backward values, so the sequence is a single bidirectional object.

#include <kbonacci/exact_int.hpp>

#include <deque>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

namespace kbonacci {

/// Recurrence order k; always >= 2.
class SequenceOrder {
 public:
  /// Throws std::invalid_argument when k < 2.
  explicit SequenceOrder(int k);

  int value() const noexcept { return k_; }
  friend bool operator==(SequenceOrder, SequenceOrder) = default;
  friend auto operator<=>(SequenceOrder, SequenceOrder) = default;

 private:
  int k_;
};

namespace detail {

// Bidirectional "sum of the previous k terms" recurrence over a contiguous,
// lazily grown window. Thread-safe; memoization is not observable.
class UnitRecurrence {
 public:
  // seeds[i] is the term at index i, for i in [0, seeds.size()).
  explicit UnitRecurrence(std::vector<ExactInt> seeds);

  std::size_t order() const noexcept { return order_; }
  ExactInt at(TermIndex j) const;
  std::vector<ExactInt> range(TermIndex lo, TermIndex hi) const;
  std::pair<TermIndex, TermIndex> window() const;

  // Indices further than this past the cached window are computed with a
  // rolling buffer and not stored.
  static constexpr TermIndex kMaxGrowth = TermIndex{1} << 16;

 private:
  void grow_locked(TermIndex j) const;
  ExactInt roll_forward_locked(TermIndex j) const;
  ExactInt roll_backward_locked(TermIndex j) const;
  const ExactInt& cached_locked(TermIndex j) const { return window_[static_cast<std::size_t>(j - lo_)]; }

  std::size_t order_;
  mutable std::mutex mu_;
  mutable std::deque<ExactInt> window_;
  mutable TermIndex lo_ = 0;
};

}  // namespace detail

class KbonacciSequence {
 public:
  explicit KbonacciSequence(SequenceOrder k);

  SequenceOrder order() const noexcept { return order_; }
  ExactInt term(TermIndex j) const { return rec_.at(j); }
  std::vector<ExactInt> range(TermIndex lo, TermIndex hi) const { return rec_.range(lo, hi); }
  std::pair<TermIndex, TermIndex> cached_window() const { return rec_.window(); }

 private:
  SequenceOrder order_;
  detail::UnitRecurrence rec_;
};

/// Lucas numbers: L_0 = 2, L_1 = 1, L_{n+1} = L_n + L_{n-1} in both directions.
class LucasSequence {
 public:
  LucasSequence();

  ExactInt term(TermIndex j) const { return rec_.at(j); }
  std::vector<ExactInt> range(TermIndex lo, TermIndex hi) const { return rec_.range(lo, hi); }

 private:
  detail::UnitRecurrence rec_;
};

/// Process-wide shared sequence for order k.
const KbonacciSequence& kbonacci(SequenceOrder k);
const LucasSequence& lucas();

ExactInt term(SequenceOrder k, TermIndex j);

/// Terms j_lo..j_hi inclusive. Throws std::invalid_argument if j_lo > j_hi.
std::vector<ExactInt> term_range(SequenceOrder k, TermIndex j_lo, TermIndex j_hi);

/// Forward-only evaluation with a k-term rolling window and no caching.
/// This is the O(j) baseline the matrix-power path is benchmarked against.
/// Throws std::invalid_argument for j < 0.
ExactInt iterate_term(SequenceOrder k, TermIndex j);

/// The two exact bands f_j = 2^{j-k} for k <= j <= 2k-1 and
/// f_j = 2^{j-k} - (j-2k+2) 2^{j-2k-1} for 2k <= j <= 3k-2; nullopt elsewhere.
/// The second form agrees with 2^{j-k} - (2^{j-2k+1} - 1) only at j = 2k, 2k+1.
std::optional<ExactInt> closed_form_band(SequenceOrder k, TermIndex j);

ExactInt lucas_term(TermIndex j);

// Backward values come in blocks of k:
// block n = (f_{-(nk+1)}, f_{-(nk+2)}, ..., f_{-(nk+k)}).
struct BackwardBlock {
  int k = 2;
  std::int64_t n = 0;
  std::vector<ExactInt> values;
};

/// Throws std::invalid_argument if n < 0.
BackwardBlock backward_block(SequenceOrder k, std::int64_t n);

// Observed structure of a backward block. Each flag is evaluated on its own
// so callers can see exactly which observation breaks for a given (k, n).
struct BlockProperties {
  bool alternating_signs = false;   // nonzero prefix alternates +,-,+,...
  bool zero_sum = false;
  bool leader_equals_forward = false;  // f_{-(nk+1)} == f_{k+n}
  bool leader_is_power = false;        // f_{-(nk+1)} == 2^n
  bool leading_power = false;          // both of the above
  bool last_nonzero_unit = false;      // last nonzero entry is +1 or -1
  bool second_last_odd = false;        // |second-last nonzero| == 2n + 1
  bool interior_even = false;          // entries before the second-last nonzero are even

  ExactInt leader;
  ExactInt forward_term;
  std::optional<ExactInt> last_nonzero;
  std::optional<ExactInt> second_last_nonzero;
};

BlockProperties block_properties(SequenceOrder k, std::int64_t n);
BlockProperties block_properties(const BackwardBlock& block);

}  // namespace kbonacci
