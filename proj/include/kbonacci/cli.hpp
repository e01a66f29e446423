#pragma once

#include <kbonacci/sequence.hpp>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace kbonacci::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // verify found an unexpected failure, or bench values disagreed
inline constexpr int kUsage = 2;

/// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BenchRow {
  TermIndex j = 0;
  double iter_seconds = 0;
  double qpow_seconds = 0;
  std::size_t digits = 0;
  ExactInt value;
};

class BenchMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Times iterate_term against fast_term for j = step, 2*step, ..., j_max.
/// Throws std::invalid_argument unless j_max >= step >= 1, and BenchMismatch
/// if the two paths ever disagree.
std::vector<BenchRow> bench(SequenceOrder k, TermIndex j_max, TermIndex step);

/// RFC 4180 field quoting.
std::string csv_quote(const std::string& field);

}  // namespace kbonacci::cli
