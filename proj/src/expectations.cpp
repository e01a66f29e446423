#include <kbonacci/identities.hpp>

namespace kbonacci::identities {

// Failures that are known properties of the identities as written, not bugs.
// Columns: family, case id, k range, r range, r parity (-1 any), reason.
const std::vector<ExpectedDeviation>& expected_deviations() {
  static const std::vector<ExpectedDeviation> table = {
      {"geometric-literal", "check_geometric/literal-identity", 2, -1, 1, -1, -1,
       "constant 1 read as 2^n*I disagrees off the anti-diagonal; see check_geometric/corrected"},
      {"geometric-literal", "check_geometric/literal-ones", 2, -1, 1, -1, -1,
       "constant 1 read as 2^n*J disagrees off the anti-diagonal; see check_geometric/corrected"},
      {"congruence-k2", "check_congruence_sum", 2, 2, 0, -1, -1,
       "n != 0 (mod 1) never holds, so the right-hand side is empty"},
      {"congruence-filter", "check_congruence_sum", 3, -1, 0, -1, -1,
       "filter n != 0 (mod k-1) keeps the wrong summands; n != k-1 (mod k) holds"},
      {"sum-formula-matrix", "check_sum_formula", 3, -1, 1, -1, -1,
       "shifted blocks need the boundary term sum_i i*F_{k-2-i}; see check_sum_formula/corrected"},
      {"square-convolution-matrix", "check_square_convolution", 2, -1, 1, -1, -1,
       "matrix form loses the boundary product F_0 F_{-1}"},
      {"square-convolution-matrix", "check_square_convolution/boundary-term", 3, -1, 1, -1, -1,
       "for k >= 3 the order-k^r matrices do not commute and no boundary term repairs the sum"},
      {"square-diff-even-r", "check_square_diff", 2, 2, 2, -1, 0,
       "even r scale is 5^{(r-2)/2}, not 5^{r/2}; see check_square_diff/corrected"},
  };
  return table;
}

}  // namespace kbonacci::identities
