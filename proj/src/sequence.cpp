#include <kbonacci/sequence.hpp>

#include <map>
#include <memory>
#include <stdexcept>
#include <string>

namespace kbonacci {

ExactInt parse_decimal(const std::string& text) {
  std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (text.size() == start) throw std::invalid_argument("empty integer literal");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') throw std::invalid_argument("not a decimal integer: " + text);
  }
  return ExactInt(text[0] == '+' ? text.substr(1) : text, 10);
}

std::size_t decimal_digits(const ExactInt& v) {
  if (v == 0) return 1;
  std::string s = v.get_str(10);
  return s[0] == '-' ? s.size() - 1 : s.size();
}

SequenceOrder::SequenceOrder(int k) : k_(k) {
  if (k < 2) throw std::invalid_argument("order k must be >= 2, got " + std::to_string(k));
}

namespace detail {

UnitRecurrence::UnitRecurrence(std::vector<ExactInt> seeds)
    : order_(seeds.size()), window_(seeds.begin(), seeds.end()) {
  if (order_ < 2) throw std::invalid_argument("recurrence needs at least two seeds");
}

std::pair<TermIndex, TermIndex> UnitRecurrence::window() const {
  std::lock_guard lock(mu_);
  return {lo_, lo_ + static_cast<TermIndex>(window_.size()) - 1};
}

ExactInt UnitRecurrence::at(TermIndex j) const {
  std::lock_guard lock(mu_);
  const TermIndex hi = lo_ + static_cast<TermIndex>(window_.size()) - 1;
  if (j > hi + kMaxGrowth) return roll_forward_locked(j);
  if (j < lo_ - kMaxGrowth) return roll_backward_locked(j);
  grow_locked(j);
  return cached_locked(j);
}

std::vector<ExactInt> UnitRecurrence::range(TermIndex lo, TermIndex hi) const {
  if (lo > hi) {
    throw std::invalid_argument("inverted range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  std::lock_guard lock(mu_);
  grow_locked(lo);
  grow_locked(hi);
  std::vector<ExactInt> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (TermIndex j = lo; j <= hi; ++j) out.push_back(cached_locked(j));
  return out;
}

void UnitRecurrence::grow_locked(TermIndex j) const {
  const auto k = order_;
  while (j >= lo_ + static_cast<TermIndex>(window_.size())) {
    ExactInt next = 0;
    for (std::size_t i = window_.size() - k; i < window_.size(); ++i) next += window_[i];
    window_.push_back(std::move(next));
  }
  while (j < lo_) {
    // f_{lo-1} = f_{lo-1+k} - (f_{lo} + ... + f_{lo+k-2})
    ExactInt prev = window_[k - 1];
    for (std::size_t i = 0; i + 1 < k; ++i) prev -= window_[i];
    window_.push_front(std::move(prev));
    --lo_;
  }
}

ExactInt UnitRecurrence::roll_forward_locked(TermIndex j) const {
  const auto k = order_;
  // buf holds k consecutive terms; the slot at `oldest` is overwritten in place
  // by the next term, which is the sum of all k.
  std::vector<ExactInt> buf(window_.end() - static_cast<std::ptrdiff_t>(k), window_.end());
  TermIndex top = lo_ + static_cast<TermIndex>(window_.size()) - 1;
  std::size_t oldest = 0;
  while (top < j) {
    ExactInt& slot = buf[oldest];
    for (std::size_t i = 0; i < k; ++i) {
      if (i != oldest) mpz_add(slot.get_mpz_t(), slot.get_mpz_t(), buf[i].get_mpz_t());
    }
    oldest = (oldest + 1) % k;
    ++top;
  }
  return buf[(oldest + k - 1) % k];
}

ExactInt UnitRecurrence::roll_backward_locked(TermIndex j) const {
  const auto k = order_;
  std::vector<ExactInt> buf(window_.begin(), window_.begin() + static_cast<std::ptrdiff_t>(k));
  TermIndex bottom = lo_;
  // newest is the slot holding the highest index; it becomes the term k below it.
  std::size_t newest = k - 1;
  while (bottom > j) {
    ExactInt& slot = buf[newest];
    for (std::size_t i = 0; i < k; ++i) {
      if (i != newest) mpz_sub(slot.get_mpz_t(), slot.get_mpz_t(), buf[i].get_mpz_t());
    }
    newest = (newest + k - 1) % k;
    --bottom;
  }
  return buf[(newest + 1) % k];
}

}  // namespace detail

namespace {

std::vector<ExactInt> kbonacci_seeds(SequenceOrder k) {
  std::vector<ExactInt> seeds(static_cast<std::size_t>(k.value()), ExactInt(0));
  seeds.back() = 1;
  return seeds;
}

}  // namespace

KbonacciSequence::KbonacciSequence(SequenceOrder k) : order_(k), rec_(kbonacci_seeds(k)) {}

LucasSequence::LucasSequence() : rec_({ExactInt(2), ExactInt(1)}) {}

const KbonacciSequence& kbonacci(SequenceOrder k) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<KbonacciSequence>> registry;
  std::lock_guard lock(mu);
  auto& slot = registry[k.value()];
  if (!slot) slot = std::make_unique<KbonacciSequence>(k);
  return *slot;
}

const LucasSequence& lucas() {
  static const LucasSequence seq;
  return seq;
}

ExactInt term(SequenceOrder k, TermIndex j) { return kbonacci(k).term(j); }

std::vector<ExactInt> term_range(SequenceOrder k, TermIndex j_lo, TermIndex j_hi) {
  return kbonacci(k).range(j_lo, j_hi);
}

ExactInt iterate_term(SequenceOrder k, TermIndex j) {
  if (j < 0) throw std::invalid_argument("iterate_term needs j >= 0");
  const auto order = static_cast<std::size_t>(k.value());
  if (j < k.value()) return j == k.value() - 1 ? 1 : 0;
  std::vector<ExactInt> buf = kbonacci_seeds(k);
  std::size_t oldest = 0;
  for (TermIndex top = k.value() - 1; top < j; ++top) {
    ExactInt& slot = buf[oldest];
    for (std::size_t i = 0; i < order; ++i) {
      if (i != oldest) mpz_add(slot.get_mpz_t(), slot.get_mpz_t(), buf[i].get_mpz_t());
    }
    oldest = (oldest + 1) % order;
  }
  return buf[(oldest + order - 1) % order];
}

std::optional<ExactInt> closed_form_band(SequenceOrder k, TermIndex j) {
  const TermIndex kk = k.value();
  if (j >= kk && j <= 2 * kk - 1) return pow2(static_cast<unsigned long>(j - kk));
  if (j >= 2 * kk && j <= 3 * kk - 2) {
    // f_{2k+m} = 2^{k+m} - (m+2) 2^{m-1}
    const auto m = static_cast<unsigned long>(j - 2 * kk);
    return ExactInt(pow2(static_cast<unsigned long>(j - kk)) - ExactInt((m + 2) * pow2(m)) / 2);
  }
  return std::nullopt;
}

ExactInt lucas_term(TermIndex j) { return lucas().term(j); }

BackwardBlock backward_block(SequenceOrder k, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("block index must be >= 0");
  const TermIndex kk = k.value();
  BackwardBlock block{k.value(), n, {}};
  // f_{-(nk+k)} .. f_{-(nk+1)} in ascending index order, then reversed.
  auto values = term_range(k, -(n * kk + kk), -(n * kk + 1));
  block.values.assign(values.rbegin(), values.rend());
  return block;
}

BlockProperties block_properties(SequenceOrder k, std::int64_t n) {
  return block_properties(backward_block(k, n));
}

BlockProperties block_properties(const BackwardBlock& block) {
  BlockProperties p;
  const auto& v = block.values;
  const SequenceOrder k(block.k);

  p.leader = v.front();
  p.forward_term = term(k, block.k + block.n);
  p.leader_equals_forward = p.leader == p.forward_term;
  p.leader_is_power = p.leader == pow2(static_cast<unsigned long>(block.n));
  p.leading_power = p.leader_equals_forward && p.leader_is_power;

  ExactInt sum = 0;
  for (const auto& x : v) sum += x;
  p.zero_sum = sum == 0;

  std::optional<std::size_t> last;
  for (std::size_t i = v.size(); i-- > 0;) {
    if (v[i] != 0) {
      last = i;
      break;
    }
  }
  if (!last) return p;

  p.alternating_signs = true;
  for (std::size_t i = 0; i <= *last; ++i) {
    const int want = (i % 2 == 0) ? 1 : -1;
    if (sgn(v[i]) != want) {
      p.alternating_signs = false;
      break;
    }
  }

  p.last_nonzero = v[*last];
  p.last_nonzero_unit = abs(v[*last]) == 1;

  std::optional<std::size_t> second;
  for (std::size_t i = *last; i-- > 0;) {
    if (v[i] != 0) {
      second = i;
      break;
    }
  }
  if (!second) return p;
  p.second_last_nonzero = v[*second];
  p.second_last_odd = abs(v[*second]) == 2 * block.n + 1;
  p.interior_even = true;
  for (std::size_t i = 0; i < *second; ++i) {
    if (mpz_even_p(v[i].get_mpz_t()) == 0) {
      p.interior_even = false;
      break;
    }
  }
  return p;
}

}  // namespace kbonacci
