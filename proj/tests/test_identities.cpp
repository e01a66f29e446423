#include <kbonacci/identities.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

using namespace kbonacci;
using namespace kbonacci::identities;

namespace {

CheckerParams at(int k, int r, std::int64_t index_max = 12, std::int64_t index_min = -2) {
  return CheckerParams{SequenceOrder(k), r, index_min, index_max};
}

bool params_match(const Params& have, const std::map<std::string, std::int64_t>& want) {
  for (const auto& [name, v] : want) {
    auto it = std::find_if(have.begin(), have.end(), [&name](const auto& kv) { return kv.first == name; });
    if (it == have.end() || it->second != v) return false;
  }
  return true;
}

const CaseResult& find_case(const VerificationReport& report, const std::string& id,
                            const std::map<std::string, std::int64_t>& want) {
  for (const auto& c : report.cases)
    if (c.id == id && params_match(c.params, want)) return c;
  throw std::runtime_error("no case " + id);
}

bool has_case(const VerificationReport& report, const std::string& id) {
  return std::any_of(report.cases.begin(), report.cases.end(), [&id](const CaseResult& c) { return c.id == id; });
}

Status status_of(const VerificationReport& report, const std::string& id,
                 const std::map<std::string, std::int64_t>& want) {
  return find_case(report, id, want).status;
}

}  // namespace

TEST(SumFormula, ScalarExamples) {
  EXPECT_EQ(status_of(check_sum_formula(at(3, 0)), "check_sum_formula", {{"n", 4}}), Status::Holds);
  EXPECT_EQ(status_of(check_sum_formula(at(2, 0)), "check_sum_formula", {{"n", 5}}), Status::Holds);
}

TEST(SumFormula, FibonacciMatrixHolds) {
  for (int r = 1; r <= 3; ++r) {
    const auto report = check_sum_formula(at(2, r, 8));
    EXPECT_EQ(report.count(Status::Fails), 0u) << r;
  }
}

// For k >= 3 the matrix form needs the seed term sum_i i*F_{k-2-i}, which is
// zero only for scalars.
TEST(SumFormula, HigherOrderMatrixNeedsSeedTerm) {
  const auto report = check_sum_formula(at(3, 1, 6));
  const auto& literal = find_case(report, "check_sum_formula", {{"n", 2}});
  EXPECT_EQ(literal.status, Status::Fails);
  ASSERT_TRUE(literal.counterexample.has_value());
  EXPECT_FALSE(literal.counterexample->lhs == literal.counterexample->rhs);
  for (const auto& c : report.cases) {
    if (c.id == "check_sum_formula/corrected") {
      EXPECT_EQ(c.status, Status::HoldsCorrected);
    }
  }
  EXPECT_TRUE(has_case(report, "check_sum_formula/corrected"));
}

TEST(DoubleShift, Examples) {
  EXPECT_EQ(status_of(check_double_shift(at(3, 0)), "check_double_shift", {{"j", 5}}), Status::Holds);
  EXPECT_EQ(status_of(check_double_shift(at(2, 0)), "check_double_shift", {{"j", 4}}), Status::Holds);
  for (int k = 2; k <= 4; ++k)
    for (int r = 0; r <= 2; ++r) EXPECT_EQ(check_double_shift(at(k, r, 8)).count(Status::Fails), 0u);
}

TEST(Geometric, Examples) {
  EXPECT_EQ(status_of(check_geometric(at(2, 0)), "check_geometric", {{"n", 2}}), Status::Holds);

  const auto m = check_geometric(at(2, 1));
  const auto& literal = find_case(m, "check_geometric/literal-identity", {{"n", 1}});
  EXPECT_EQ(literal.status, Status::Fails);
  ASSERT_TRUE(literal.counterexample.has_value());
  EXPECT_EQ(find_case(m, "check_geometric/literal-ones", {{"n", 1}}).status, Status::Fails);
  EXPECT_EQ(status_of(m, "check_geometric/corrected", {{"n", 2}}), Status::HoldsCorrected);
}

TEST(Geometric, CorrectedFormHoldsAcrossGrid) {
  for (int k = 2; k <= 4; ++k) {
    for (int r = 1; r <= 2; ++r) {
      for (const auto& c : check_geometric(at(k, r, 8)).cases) {
        if (c.id == "check_geometric/corrected") {
          EXPECT_EQ(c.status, Status::HoldsCorrected) << "k=" << k << " r=" << r;
        }
      }
    }
  }
}

TEST(StridedSum, Examples) {
  EXPECT_EQ(status_of(check_strided_sum(at(2, 0)), "check_strided_sum", {{"j", 0}, {"m", 1}}), Status::Holds);
  EXPECT_EQ(status_of(check_strided_sum(at(3, 0)), "check_strided_sum", {{"j", 1}, {"m", 1}}), Status::Holds);
  EXPECT_EQ(status_of(check_strided_sum(at(2, 1)), "check_strided_sum", {{"j", 2}, {"m", 2}}), Status::Holds);
}

TEST(KStride, Examples) {
  EXPECT_EQ(status_of(check_k_stride(at(2, 0)), "check_k_stride", {{"m", 2}}), Status::Holds);
  EXPECT_EQ(status_of(check_k_stride(at(3, 0)), "check_k_stride", {{"m", 1}}), Status::Holds);
  EXPECT_EQ(status_of(check_k_stride(at(2, 2)), "check_k_stride", {{"m", 2}}), Status::Holds);
}

TEST(CongruenceSum, FibonacciFilterIsEmpty) {
  const auto report = check_congruence_sum(at(2, 0));
  const auto& c = find_case(report, "check_congruence_sum", {{"m", 1}});
  EXPECT_EQ(c.status, Status::Fails);
  ASSERT_TRUE(c.counterexample.has_value());
  EXPECT_EQ(c.counterexample->lhs.scalar(), 1);  // f_2 - f_0
  EXPECT_EQ(c.counterexample->rhs.scalar(), 0);
  EXPECT_FALSE(c.note.empty());
}

TEST(CongruenceSum, ResidueFilterHoldsForEveryOrder) {
  for (int k = 2; k <= 5; ++k) {
    for (int r = 0; r <= 1; ++r) {
      const auto report = check_congruence_sum(at(k, r, 8));
      for (const auto& c : report.cases) {
        if (c.id == "check_congruence_sum/corrected") EXPECT_EQ(c.status, Status::HoldsCorrected) << k;
      }
    }
  }
  // Scalar counterexample independent of the checker: k = 3, m = 2.
  // f_6 - f_0 = 7, while the literal filter keeps n in {-3,-1,1}: f_5 + f_3 + f_1 = 4 + 1 + 0.
  EXPECT_EQ(oracle::kbonacci(3, 6) - oracle::kbonacci(3, 0), 7);
  EXPECT_EQ(oracle::kbonacci(3, 5) + oracle::kbonacci(3, 3) + oracle::kbonacci(3, 1), 5);
  EXPECT_EQ(status_of(check_congruence_sum(at(3, 0)), "check_congruence_sum", {{"m", 2}}), Status::Fails);
}

TEST(SquareConvolution, ScalarExamples) {
  EXPECT_EQ(status_of(check_square_convolution(at(2, 0)), "check_square_convolution", {{"n", 4}}), Status::Holds);
  for (int k = 2; k <= 5; ++k) EXPECT_EQ(check_square_convolution(at(k, 0, 10)).count(Status::Fails), 0u) << k;
}

// At r = 1 the telescoped sum keeps X_0 X_{-1} = F_{-1} for k = 2, so the
// plain matrix form is off by exactly that term.
TEST(SquareConvolution, FibonacciMatrixNeedsBoundaryTerm) {
  const auto report = check_square_convolution(at(2, 1));
  const auto& c = find_case(report, "check_square_convolution", {{"n", 2}});
  EXPECT_EQ(c.status, Status::Fails);
  ASSERT_TRUE(c.counterexample.has_value());
  const SquareMatrix f_minus_one{{0, 1}, {1, -1}};
  EXPECT_EQ(c.counterexample->lhs.matrix() - c.counterexample->rhs.matrix(), -f_minus_one);
  EXPECT_EQ(status_of(report, "check_square_convolution/boundary-term", {{"n", 2}}), Status::HoldsCorrected);
}

TEST(SquareConvolution, HigherOrderMatrixStaysFalse) {
  const auto report = check_square_convolution(at(3, 1, 6));
  EXPECT_EQ(status_of(report, "check_square_convolution/boundary-term", {{"n", 3}}), Status::Fails);
}

TEST(PowerExpansion, Examples) {
  EXPECT_EQ(status_of(check_power_expansion(at(3, 0)), "check_power_expansion", {{"n", 2}, {"j", 5}}), Status::Holds);
  EXPECT_EQ(status_of(check_power_expansion(at(3, 0)), "check_power_expansion", {{"n", 1}, {"j", 4}}), Status::Holds);
  EXPECT_EQ(status_of(check_power_expansion(at(2, 1)), "check_power_expansion", {{"n", 1}, {"j", 3}}), Status::Holds);
  // f_7 = 13 = 4 f_4 + 3 f_3 + 2 f_2 for tribonacci.
  EXPECT_EQ(oracle::kbonacci(3, 7), 4 * oracle::kbonacci(3, 4) + 3 * oracle::kbonacci(3, 3) + 2 * oracle::kbonacci(3, 2));
}

TEST(PowerExpansion, OutOfRangeNIsSkipped) {
  const auto report = check_power_expansion(at(3, 0));
  const auto& zero = find_case(report, "check_power_expansion", {{"n", 0}});
  EXPECT_EQ(zero.status, Status::Skipped);
  EXPECT_FALSE(zero.note.empty());
  EXPECT_EQ(status_of(report, "check_power_expansion", {{"n", 3}}), Status::Skipped);
  EXPECT_EQ(report.count(Status::Fails), 0u);
}

TEST(QPower, Examples) {
  EXPECT_EQ(status_of(check_q_power(at(2, 1)), "check_q_power", {{"j", 6}}), Status::Holds);
  EXPECT_EQ(build_higher(SequenceOrder(2), 1, 6), (SquareMatrix{{13, 8}, {8, 5}}));
  EXPECT_EQ(status_of(check_q_power(at(3, 2)), "check_q_power", {{"j", 4}}), Status::Holds);
  EXPECT_EQ(status_of(check_q_power(at(2, 1)), "check_q_power", {{"j", 1}}), Status::Holds);
}

TEST(LucasPair, Examples) {
  EXPECT_EQ(status_of(check_lucas_pair(at(2, 0)), "check_lucas_pair/i", {{"m_plus_n", 2}}), Status::Holds);
  EXPECT_EQ(status_of(check_lucas_pair(at(2, 1)), "check_lucas_pair/i", {{"m_plus_n", 2}}), Status::Holds);
  EXPECT_EQ(build_lucas(1, 2) + build_lucas(1, 4), (SquareMatrix{{15, 10}, {10, 5}}));
  EXPECT_EQ(status_of(check_lucas_pair(at(2, 0)), "check_lucas_pair/ii", {{"m_plus_n", 0}}), Status::Holds);
}

TEST(LucasPair, RequiresFibonacciOrder) { EXPECT_THROW(check_lucas_pair(at(3, 1)), std::invalid_argument); }

TEST(AdditionFormula, Examples) {
  EXPECT_EQ(status_of(check_addition_formula(at(2, 0)), "check_addition_formula", {{"m", 3}, {"n", 4}}), Status::Holds);
  EXPECT_EQ(status_of(check_addition_formula(at(2, 1)), "check_addition_formula", {{"m", 2}, {"n", 2}}), Status::Holds);
  EXPECT_EQ(status_of(check_addition_formula(at(2, 2)), "check_addition_formula", {{"m", 2}, {"n", 1}}), Status::Holds);
}

TEST(FlDouble, Examples) {
  EXPECT_EQ(status_of(check_fl_double(at(2, 0)), "check_fl_double", {{"n", 4}}), Status::Holds);
  EXPECT_EQ(status_of(check_fl_double(at(2, 1)), "check_fl_double", {{"n", 2}}), Status::Holds);
  EXPECT_EQ(status_of(check_fl_double(at(2, 0)), "check_fl_double", {{"n", 1}}), Status::Holds);
}

TEST(SquareSum, Examples) {
  EXPECT_EQ(status_of(check_square_sum(at(2, 0)), "check_square_sum", {{"n", 3}}), Status::Holds);
  EXPECT_EQ(status_of(check_square_sum(at(2, 1)), "check_square_sum", {{"n", 2}}), Status::Holds);
}

TEST(SquareDiff, OddLevelHolds) {
  EXPECT_EQ(status_of(check_square_diff(at(2, 1)), "check_square_diff", {{"n", 2}}), Status::Holds);
  EXPECT_EQ(check_square_diff(at(2, 3, 6)).count(Status::Fails), 0u);
}

// F_a F_b = 5^{(r-2)/2} L_{a+b} at even r, so the stated 5^{r/2} is one power too high.
TEST(SquareDiff, EvenLevelNeedsLowerScale) {
  const auto report = check_square_diff(at(2, 2, 6));
  const auto& c = find_case(report, "check_square_diff", {{"n", 2}});
  EXPECT_EQ(c.status, Status::Fails);
  ASSERT_TRUE(c.counterexample.has_value());
  EXPECT_EQ(ExactInt(5) * c.counterexample->lhs.matrix(), c.counterexample->rhs.matrix());
  EXPECT_EQ(status_of(report, "check_square_diff/corrected", {{"n", 2}}), Status::HoldsCorrected);
}

TEST(SquareSeries, Examples) {
  EXPECT_EQ(status_of(check_square_series(at(2, 0)), "check_square_series", {{"n", 4}}), Status::Holds);
  EXPECT_EQ(status_of(check_square_series(at(2, 1)), "check_square_series", {{"n", 2}}), Status::Holds);
  EXPECT_EQ(status_of(check_square_series(at(2, 2)), "check_square_series", {{"n", 1}}), Status::Holds);
}

TEST(SquareSeries, FibonacciMatrixValue) {
  const SquareMatrix q{{1, 1}, {1, 0}};
  const auto lhs = oracle::naive_mul(q, q) + oracle::naive_mul(pow(q, 2), pow(q, 2));
  EXPECT_EQ(lhs, (SquareMatrix{{7, 4}, {4, 3}}));
  EXPECT_EQ(build_base(SequenceOrder(2), 5) - build_base(SequenceOrder(2), 1), lhs);
}

TEST(QOracle, AgreesWithBuildersAtLevelOne) {
  for (auto fn : {check_lucas_pair, check_addition_formula, check_fl_double, check_square_sum, check_square_diff,
                  check_square_series}) {
    const auto report = fn(at(2, 1, 10, -4));
    std::size_t oracle_cases = 0;
    for (const auto& c : report.cases) {
      if (c.id.ends_with("/q-oracle")) {
        ++oracle_cases;
        EXPECT_EQ(c.status, Status::Holds) << c.id;
      }
    }
    EXPECT_GT(oracle_cases, 0u) << report.checker;
    EXPECT_EQ(report.count(Status::Fails), 0u) << report.checker;
  }
}

TEST(Reports, FailuresCarryCounterexamples) {
  for (const auto& checker : all_checkers()) {
    for (int r = 0; r <= 2; ++r) {
      const auto report = checker.run(at(checker.fibonacci_only ? 2 : 3, r, 6));
      for (const auto& c : report.cases) {
        if (c.status == Status::Fails || c.status == Status::HoldsCorrected) {
          EXPECT_TRUE(c.counterexample.has_value()) << c.id;
        }
        if (c.status == Status::Holds) {
          EXPECT_FALSE(c.counterexample.has_value()) << c.id;
        }
      }
    }
  }
}

TEST(Reports, NegativeLevelRejected) { EXPECT_THROW(check_q_power(at(2, -1)), std::invalid_argument); }

TEST(RunSuite, EmptySelection) {
  const auto report = run_suite({}, SuiteGrid{});
  EXPECT_TRUE(report.pass);
  EXPECT_TRUE(report.cases.empty());
}

TEST(RunSuite, QPowerOnly) {
  SuiteGrid grid;
  grid.k_min = 2;
  grid.k_max = 3;
  grid.r_max = 2;
  grid.r_max_fibonacci = 2;
  grid.index_max = 10;
  const auto report = run_suite({"check_q_power"}, grid);
  EXPECT_TRUE(report.pass);
  ASSERT_FALSE(report.cases.empty());
  for (const auto& sc : report.cases) EXPECT_EQ(sc.result.status, Status::Holds);
}

TEST(RunSuite, UnknownIdRejected) {
  EXPECT_THROW(run_suite({"check_nonexistent"}, SuiteGrid{}), std::invalid_argument);
}

TEST(RunSuite, FullGridMatchesExpectationTable) {
  const auto report = run_suite(all_checker_ids(), SuiteGrid{});
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.unexpected_failures, 0u);
  const std::set<std::string> families{"congruence-filter",        "congruence-k2",     "geometric-literal",
                                       "square-convolution-matrix", "square-diff-even-r", "sum-formula-matrix"};
  EXPECT_EQ(report.deviation_families, families);
}

TEST(RunSuite, CongruenceFailuresAreMarkedExpected) {
  const auto report = run_suite({"check_congruence_sum"}, SuiteGrid{});
  std::size_t failing = 0;
  for (const auto& sc : report.cases) {
    if (sc.result.status == Status::Fails) {
      ++failing;
      EXPECT_TRUE(sc.expected);
    }
  }
  EXPECT_GT(failing, 0u);
}

TEST(RunSuite, DeterministicJson) {
  SuiteGrid grid;
  grid.index_max = 6;
  const auto a = run_suite(all_checker_ids(), grid).to_json().dump();
  const auto b = run_suite(all_checker_ids(), grid).to_json().dump();
  EXPECT_EQ(a, b);
  const auto stamped = run_suite({"check_q_power"}, grid).to_json("2026-01-01T00:00:00Z");
  EXPECT_EQ(stamped.at("timestamp"), "2026-01-01T00:00:00Z");
  EXPECT_FALSE(run_suite({"check_q_power"}, grid).to_json().contains("timestamp"));
}

TEST(RunSuite, JsonSchema) {
  SuiteGrid grid;
  grid.index_max = 4;
  const auto j = run_suite({"check_congruence_sum"}, grid).to_json();
  ASSERT_TRUE(j.at("cases").is_array());
  const auto& first = j.at("cases").at(0);
  EXPECT_TRUE(first.at("params").at("k").is_string());
  EXPECT_TRUE(first.at("status").is_string());
  EXPECT_TRUE(first.contains("counterexample"));
  EXPECT_TRUE(j.at("pass").is_boolean());
}
