#include <kbonacci/kbx_matrix.hpp>

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <stdexcept>

namespace kbonacci {

namespace {

void require_level(int r) {
  if (r < 1) throw std::invalid_argument("level r must be >= 1, got " + std::to_string(r));
}

using TermFn = std::function<ExactInt(TermIndex)>;

// Shared Hankel-of-Hankel construction for F (order k) and L (order 2).
SquareMatrix build_recursive(int k, int r, TermIndex j, const TermFn& term_at) {
  if (r == 1) {
    SquareMatrix m(static_cast<std::size_t>(k));
    for (int l = 1; l <= k; ++l) {
      for (int u = 1; u <= k; ++u) m(l - 1, u - 1) = term_at(j + k - l - u + 1);
    }
    return m;
  }
  // Only 2k - 1 distinct block indices occur.
  std::map<TermIndex, SquareMatrix> memo;
  BlockGrid grid{static_cast<std::size_t>(k), {}};
  grid.blocks.reserve(static_cast<std::size_t>(k * k));
  for (int l = 1; l <= k; ++l) {
    for (int u = 1; u <= k; ++u) {
      const TermIndex idx = j + k - l - u + 1;
      auto it = memo.find(idx);
      if (it == memo.end()) it = memo.emplace(idx, build_recursive(k, r - 1, idx, term_at)).first;
      grid.blocks.push_back(it->second);
    }
  }
  return compose(grid);
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::F: return "F";
    case Family::L: return "L";
    case Family::Q: return "Q";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(s[0]))) {
      case 'F': return Family::F;
      case 'L': return Family::L;
      case 'Q': return Family::Q;
    }
  }
  throw std::invalid_argument("unknown matrix family '" + s + "' (expected F, L or Q)");
}

std::size_t matrix_order(SequenceOrder k, int r) {
  require_level(r);
  std::size_t n = 1;
  for (int t = 0; t < r; ++t) {
    n *= static_cast<std::size_t>(k.value());
    if (n > (std::size_t{1} << 24)) throw std::invalid_argument("matrix order k^r is too large");
  }
  return n;
}

void MatrixSpec::validate() const {
  require_level(r);
  matrix_order(k, r);
  if (family == Family::L && k.value() != 2) throw std::invalid_argument("Lucas matrices require k = 2");
  if (family == Family::Q && j) throw std::invalid_argument("Q matrices take no index j");
  if (family != Family::Q && !j) throw std::invalid_argument(to_string(family) + " matrices need an index j");
}

std::size_t MatrixSpec::dim() const { return matrix_order(k, r); }

MultiIndex MultiIndex::from_flat(SequenceOrder k, int r, std::size_t row, std::size_t col) {
  const auto kk = static_cast<std::size_t>(k.value());
  MultiIndex mi;
  mi.rows.assign(static_cast<std::size_t>(r), 0);
  mi.cols.assign(static_cast<std::size_t>(r), 0);
  for (int t = r - 1; t >= 0; --t) {
    mi.rows[static_cast<std::size_t>(t)] = static_cast<int>(row % kk) + 1;
    mi.cols[static_cast<std::size_t>(t)] = static_cast<int>(col % kk) + 1;
    row /= kk;
    col /= kk;
  }
  return mi;
}

std::size_t MultiIndex::flat_row(SequenceOrder k) const {
  std::size_t v = 0;
  for (int d : rows) v = v * static_cast<std::size_t>(k.value()) + static_cast<std::size_t>(d - 1);
  return v;
}

std::size_t MultiIndex::flat_col(SequenceOrder k) const {
  std::size_t v = 0;
  for (int d : cols) v = v * static_cast<std::size_t>(k.value()) + static_cast<std::size_t>(d - 1);
  return v;
}

TermIndex MultiIndex::index_offset(SequenceOrder k) const {
  TermIndex off = 0;
  for (std::size_t t = 0; t < rows.size(); ++t) off += k.value() - rows[t] - cols[t] + 1;
  return off;
}

SquareMatrix build_base(SequenceOrder k, TermIndex j) { return build_higher(k, 1, j); }

SquareMatrix build_higher(SequenceOrder k, int r, TermIndex j) {
  matrix_order(k, r);
  const KbonacciSequence& seq = kbonacci(k);
  return build_recursive(k.value(), r, j, [&seq](TermIndex i) { return seq.term(i); });
}

SquareMatrix build_lucas(int r, TermIndex j) {
  matrix_order(SequenceOrder(2), r);
  return build_recursive(2, r, j, [](TermIndex i) { return lucas_term(i); });
}

SquareMatrix build_q(SequenceOrder k, int r) {
  const auto kk = static_cast<std::size_t>(k.value());
  const std::size_t inner = matrix_order(k, r) / kk;
  SquareMatrix companion(kk);
  for (std::size_t l = 0; l < kk; ++l) {
    companion(l, 0) = 1;
    if (l + 1 < kk) companion(l, l + 1) = 1;
  }
  return kronecker(companion, SquareMatrix::identity(inner));
}

SquareMatrix fast_f(SequenceOrder k, int r, TermIndex j) {
  if (j < 1) throw std::out_of_range("fast_f needs j >= 1, got " + std::to_string(j));
  return build_higher(k, r, 1) * pow(build_q(k, r), static_cast<unsigned long long>(j - 1));
}

ExactInt fast_term(SequenceOrder k, TermIndex j) {
  if (j < 0) throw std::invalid_argument("fast_term needs j >= 0");
  const auto last = static_cast<std::size_t>(k.value() - 1);
  // Row 1, column k of F_j holds f_j; row 2, column k of F_1 holds f_0.
  if (j == 0) return build_base(k, 1)(1, last);
  return fast_f(k, 1, j)(0, last);
}

SquareMatrix build(const MatrixSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case Family::F: return build_higher(spec.k, spec.r, *spec.j);
    case Family::L: return build_lucas(spec.r, *spec.j);
    case Family::Q: return build_q(spec.k, spec.r);
  }
  throw std::logic_error("unreachable");
}

}  // namespace kbonacci
