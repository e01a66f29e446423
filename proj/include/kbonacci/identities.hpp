#pragma once

// Executable checkers for the k-bonacci sum, shift, geometric, strided,
// congruence, convolution, power-expansion and Q-power identities, and for
// the Fibonacci/Lucas identities of order-2^r matrices.
//
// Every checker evaluates both sides of its identity independently and
// compares exact values. Identities with denominators (1/(k-1), 1/2^j) are
// compared after multiplying through, with the divisibility asserted
// separately. Level r = 0 means the scalar identity; r >= 1 means the
// matrix identity at order k^r.

#include <kbonacci/kbx_matrix.hpp>
#include <kbonacci/matrix.hpp>
#include <kbonacci/sequence.hpp>

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kbonacci::identities {

enum class Status { Holds, Fails, HoldsCorrected, Skipped };

std::string to_string(Status s);

// Scalar (r = 0) or matrix (r >= 1) operand.
class Value {
 public:
  Value(ExactInt v) : v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Value(SquareMatrix m) : v_(std::move(m)) {}  // NOLINT(google-explicit-constructor)

  bool is_scalar() const noexcept { return std::holds_alternative<ExactInt>(v_); }
  const ExactInt& scalar() const { return std::get<ExactInt>(v_); }
  const SquareMatrix& matrix() const { return std::get<SquareMatrix>(v_); }

  Value& operator+=(const Value& o);
  Value& operator-=(const Value& o);

  friend Value operator+(Value a, const Value& b) { return a += b; }
  friend Value operator-(Value a, const Value& b) { return a -= b; }
  /// Matrix product for matrices, ordinary product for scalars.
  friend Value operator*(const Value& a, const Value& b);
  friend Value operator*(const ExactInt& c, const Value& a);
  friend bool operator==(const Value&, const Value&) = default;

  /// True when every entry is divisible by d.
  bool divisible_by(const ExactInt& d) const;
  nlohmann::json to_json() const;

 private:
  std::variant<ExactInt, SquareMatrix> v_;
};

using Params = std::vector<std::pair<std::string, std::int64_t>>;

struct Counterexample {
  Params params;
  Value lhs;
  Value rhs;
};

struct CaseResult {
  std::string id;  // checker id, optionally "/<reading>"
  Params params;
  Status status = Status::Holds;
  std::optional<Counterexample> counterexample;
  std::string note;
};

// One checker invocation: a single (k, r) with index bounds. Index variables
// (n, j, m) run up to index_max; checkers that accept negative indices start
// at index_min.
struct CheckerParams {
  SequenceOrder k{2};
  int r = 0;
  std::int64_t index_min = -2;
  std::int64_t index_max = 12;
};

struct VerificationReport {
  std::string checker;
  CheckerParams params;
  std::vector<CaseResult> cases;

  std::size_t count(Status s) const;
};

using CheckerFn = std::function<VerificationReport(const CheckerParams&)>;

struct CheckerInfo {
  std::string id;
  bool fibonacci_only;  // requires k = 2 (order-2^r Fibonacci/Lucas checkers)
  CheckerFn run;
};

/// All checkers, in a fixed order.
const std::vector<CheckerInfo>& all_checkers();

VerificationReport check_sum_formula(const CheckerParams& p);
VerificationReport check_double_shift(const CheckerParams& p);
VerificationReport check_geometric(const CheckerParams& p);
VerificationReport check_strided_sum(const CheckerParams& p);
VerificationReport check_k_stride(const CheckerParams& p);
VerificationReport check_congruence_sum(const CheckerParams& p);
VerificationReport check_square_convolution(const CheckerParams& p);
VerificationReport check_power_expansion(const CheckerParams& p);
VerificationReport check_q_power(const CheckerParams& p);
VerificationReport check_lucas_pair(const CheckerParams& p);
VerificationReport check_addition_formula(const CheckerParams& p);
VerificationReport check_fl_double(const CheckerParams& p);
VerificationReport check_square_sum(const CheckerParams& p);
VerificationReport check_square_diff(const CheckerParams& p);
VerificationReport check_square_series(const CheckerParams& p);

// ---------------------------------------------------------------------------
// Expected deviations

// A failing case is expected when it matches an entry of this table. The
// table is data: adding a finding does not touch checker code.
struct ExpectedDeviation {
  std::string family;
  std::string case_id;  // exact CaseResult::id
  int k_min;
  int k_max;  // inclusive; -1 for unbounded
  int r_min;
  int r_max;  // inclusive; -1 for unbounded
  int r_parity;  // -1 any, 0 even, 1 odd
  std::string reason;

  bool matches(const CaseResult& c, int k, int r) const;
};

const std::vector<ExpectedDeviation>& expected_deviations();

// ---------------------------------------------------------------------------
// Suite runner

struct SuiteGrid {
  int k_min = 2;
  int k_max = 4;
  int r_max = 2;
  int r_max_fibonacci = 3;  // level cap when k = 2
  std::size_t max_dim = 27;  // (k, r) with k^r above this are not run
  std::int64_t index_min = -2;
  std::int64_t index_max = 12;

  nlohmann::json to_json() const;
};

struct SuiteCase {
  int k;
  int r;
  CaseResult result;
  bool expected = false;  // failure declared in the expectation table
};

struct SuiteReport {
  std::string suite;
  SuiteGrid grid;
  std::vector<SuiteCase> cases;  // sorted by (id, k, r, params)
  bool pass = true;
  std::set<std::string> deviation_families;  // families with at least one observed failure
  std::size_t unexpected_failures = 0;

  /// Report JSON; the timestamp is included only when non-empty.
  nlohmann::json to_json(const std::string& timestamp = {}) const;
};

/// Runs the selected checker ids (empty selection -> empty report that
/// passes). Throws std::invalid_argument for an unknown id.
SuiteReport run_suite(const std::vector<std::string>& selection, const SuiteGrid& grid);

/// Every checker id.
std::vector<std::string> all_checker_ids();

}  // namespace kbonacci::identities
