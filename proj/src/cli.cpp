#include <kbonacci/cli.hpp>

#include <kbonacci/identities.hpp>
#include <kbonacci/kbx_matrix.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <tuple>
#include <iostream>
#include <sstream>

namespace kbonacci::cli {

namespace {

using nlohmann::json;

// Raised for argument combinations CLI11 cannot express.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Common {
  std::string format = "plain";
  std::string output;
};

void add_common(CLI::App* cmd, Common& common, std::vector<std::string> formats) {
  cmd->add_option("--format", common.format, "output format")->check(CLI::IsMember(std::move(formats)));
  cmd->add_option("-o,--output", common.output, "write to this file instead of standard output");
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

std::string matrix_csv(const SquareMatrix& m) {
  std::ostringstream s;
  for (std::size_t c = 0; c < m.dim(); ++c) s << (c ? "," : "") << "c" << (c + 1);
  s << '\n';
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) s << (c ? "," : "") << csv_quote(to_decimal(m(r, c)));
    s << '\n';
  }
  return s.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// --- subcommands -----------------------------------------------------------

struct TermArgs {
  int k = 2;
  TermIndex j = 0;
  std::string method = "iter";
};

std::string do_term(const TermArgs& a, const std::string& format) {
  const SequenceOrder k(a.k);
  ExactInt value;
  if (a.method == "qpow") {
    if (a.j < 0) throw UsageError("--method qpow needs --j >= 0");
    value = fast_term(k, a.j);
  } else {
    value = a.j >= 0 ? iterate_term(k, a.j) : term(k, a.j);
  }
  if (format == "json") {
    return json{{"k", a.k}, {"j", a.j}, {"method", a.method}, {"value", to_decimal(value)}}.dump() + "\n";
  }
  if (format == "csv") {
    return "k,j,value\n" + std::to_string(a.k) + "," + std::to_string(a.j) + "," + csv_quote(to_decimal(value)) + "\n";
  }
  return to_decimal(value) + "\n";
}

struct SeqArgs {
  int k = 2;
  TermIndex from = 0;
  TermIndex to = 10;
};

std::string do_seq(const SeqArgs& a, const std::string& format) {
  const SequenceOrder k(a.k);
  const auto values = term_range(k, a.from, a.to);
  std::ostringstream s;
  if (format == "json") {
    json terms = json::array();
    for (std::size_t i = 0; i < values.size(); ++i) {
      terms.push_back({{"j", a.from + static_cast<TermIndex>(i)}, {"value", to_decimal(values[i])}});
    }
    s << json{{"k", a.k}, {"from", a.from}, {"to", a.to}, {"terms", terms}}.dump() << '\n';
  } else if (format == "csv") {
    s << "j,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
      s << a.from + static_cast<TermIndex>(i) << ',' << csv_quote(to_decimal(values[i])) << '\n';
    }
  } else {
    const std::size_t width = std::max(std::to_string(a.from).size(), std::to_string(a.to).size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      s << std::setw(static_cast<int>(width)) << a.from + static_cast<TermIndex>(i) << "  " << to_decimal(values[i])
        << '\n';
    }
  }
  return s.str();
}

struct MatrixArgs {
  std::string family = "F";
  int k = 2;
  int r = 1;
  std::optional<TermIndex> j;
  std::string method = "iter";
};

std::string do_matrix(const MatrixArgs& a, const std::string& format) {
  MatrixSpec spec{parse_family(a.family), SequenceOrder(a.k), a.r, a.j};
  spec.validate();
  SquareMatrix m = SquareMatrix::zero(1);
  if (a.method == "qpow") {
    if (spec.family != Family::F) throw UsageError("--method qpow applies to family F only");
    if (*spec.j < 1) throw UsageError("--method qpow needs --j >= 1");
    m = fast_f(spec.k, spec.r, *spec.j);
  } else {
    m = build(spec);
  }
  if (format == "json") return to_json(m).dump() + "\n";
  if (format == "csv") return matrix_csv(m);
  return to_plain(m);
}

struct BlocksArgs {
  int k = 2;
  std::int64_t count = 4;
};

std::string do_blocks(const BlocksArgs& a, const std::string& format) {
  const SequenceOrder k(a.k);
  if (a.count < 1) throw UsageError("--count must be >= 1");
  std::ostringstream s;
  json rows = json::array();
  if (format == "csv") {
    s << "n,values,alternating_signs,zero_sum,leader_equals_forward,leader_is_power,last_nonzero_unit,"
         "second_last_odd,interior_even\n";
  }
  for (std::int64_t n = 0; n < a.count; ++n) {
    const auto block = backward_block(k, n);
    const auto p = block_properties(block);
    std::vector<std::string> values;
    for (const auto& v : block.values) values.push_back(to_decimal(v));

    if (format == "json") {
      rows.push_back({{"n", n},
                      {"first_index", -(n * a.k + 1)},
                      {"values", values},
                      {"alternating_signs", p.alternating_signs},
                      {"zero_sum", p.zero_sum},
                      {"leader_equals_forward", p.leader_equals_forward},
                      {"leader_is_power", p.leader_is_power},
                      {"last_nonzero_unit", p.last_nonzero_unit},
                      {"second_last_odd", p.second_last_odd},
                      {"interior_even", p.interior_even},
                      {"forward_term", to_decimal(p.forward_term)}});
    } else if (format == "csv") {
      std::string joined;
      for (std::size_t i = 0; i < values.size(); ++i) joined += (i ? " " : "") + values[i];
      s << n << ',' << csv_quote(joined) << ',' << p.alternating_signs << ',' << p.zero_sum << ','
        << p.leader_equals_forward << ',' << p.leader_is_power << ',' << p.last_nonzero_unit << ','
        << p.second_last_odd << ',' << p.interior_even << '\n';
    } else {
      s << "block " << n << " (f_{" << -(n * a.k + 1) << "} .. f_{" << -(n * a.k + a.k) << "}):";
      for (const auto& v : values) s << ' ' << v;
      s << "\n  alternating=" << yes_no(p.alternating_signs) << " zero_sum=" << yes_no(p.zero_sum)
        << " leader=f_{" << a.k + n << "}:" << yes_no(p.leader_equals_forward) << " leader=2^" << n << ":"
        << yes_no(p.leader_is_power) << " last_unit=" << yes_no(p.last_nonzero_unit)
        << " second_last=2n+1:" << yes_no(p.second_last_odd) << " interior_even=" << yes_no(p.interior_even)
        << '\n';
    }
  }
  if (format == "json") s << json{{"k", a.k}, {"blocks", rows}}.dump() << '\n';
  return s.str();
}

struct VerifyArgs {
  std::string suite = "all";
  int min_k = 2;
  int max_k = 4;
  int max_r = 2;
  std::optional<int> max_r_fib;
  std::int64_t min_index = -2;
  std::int64_t max_n = 12;
  bool no_timestamp = false;
};

std::string do_verify(const VerifyArgs& a, const std::string& format, bool& passed) {
  std::vector<std::string> selection;
  if (a.suite == "all") {
    selection = identities::all_checker_ids();
  } else if (!a.suite.empty()) {
    std::stringstream ss(a.suite);
    for (std::string id; std::getline(ss, id, ',');) {
      if (!id.empty()) selection.push_back(id.rfind("check_", 0) == 0 ? id : "check_" + id);
    }
  }
  identities::SuiteGrid grid;
  grid.k_min = a.min_k;
  grid.k_max = a.max_k;
  grid.r_max = a.max_r;
  grid.r_max_fibonacci = a.max_r_fib.value_or(a.max_r + 1);
  grid.index_min = a.min_index;
  grid.index_max = a.max_n;
  const auto report = identities::run_suite(selection, grid);
  passed = report.pass;

  if (format == "json") return report.to_json(a.no_timestamp ? "" : iso_timestamp()).dump(2) + "\n";

  std::ostringstream s;
  if (format == "csv") {
    s << "id,k,r,params,status,expected\n";
    for (const auto& sc : report.cases) {
      std::string params;
      for (const auto& [name, v] : sc.result.params) params += (params.empty() ? "" : " ") + name + "=" + std::to_string(v);
      s << csv_quote(sc.result.id) << ',' << sc.k << ',' << sc.r << ',' << csv_quote(params) << ','
        << to_string(sc.result.status) << ',' << (sc.expected ? "1" : "0") << '\n';
    }
    return s.str();
  }

  // Plain: one summary line per (case id, k, r).
  struct Tally {
    std::size_t holds = 0, fails = 0, corrected = 0, skipped = 0, expected = 0;
  };
  std::map<std::tuple<std::string, int, int>, Tally> tally;
  for (const auto& sc : report.cases) {
    auto& t = tally[{sc.result.id, sc.k, sc.r}];
    switch (sc.result.status) {
      case identities::Status::Holds: ++t.holds; break;
      case identities::Status::Fails: ++t.fails; t.expected += sc.expected ? 1 : 0; break;
      case identities::Status::HoldsCorrected: ++t.corrected; break;
      case identities::Status::Skipped: ++t.skipped; break;
    }
  }
  for (const auto& [key, t] : tally) {
    const auto& [id, k, r] = key;
    s << std::left << std::setw(44) << id << " k=" << k << " r=" << r << "  holds=" << t.holds;
    if (t.corrected) s << " holds-corrected=" << t.corrected;
    if (t.fails) s << " fails=" << t.fails << " (expected " << t.expected << ")";
    if (t.skipped) s << " skipped=" << t.skipped;
    s << '\n';
  }
  s << "deviation families:";
  for (const auto& f : report.deviation_families) s << ' ' << f;
  s << "\nunexpected failures: " << report.unexpected_failures << "\n" << (report.pass ? "PASS" : "FAIL") << '\n';
  return s.str();
}

struct BenchArgs {
  int k = 2;
  TermIndex j_max = 10000;
  TermIndex step = 2500;
};

std::string do_bench(const BenchArgs& a, const std::string& format) {
  const auto rows = bench(SequenceOrder(a.k), a.j_max, a.step);
  std::ostringstream s;
  s << std::setprecision(6);
  if (format == "json") {
    json out = json::array();
    for (const auto& r : rows) {
      out.push_back({{"j", r.j}, {"iter_time", r.iter_seconds}, {"qpow_time", r.qpow_seconds}, {"digits", r.digits}});
    }
    s << json{{"k", a.k}, {"rows", out}}.dump() << '\n';
  } else if (format == "csv") {
    s << "j,iter_time,qpow_time,digits\n";
    for (const auto& r : rows) s << r.j << ',' << r.iter_seconds << ',' << r.qpow_seconds << ',' << r.digits << '\n';
  } else {
    s << std::setw(12) << "j" << std::setw(14) << "iter_s" << std::setw(14) << "qpow_s" << std::setw(12) << "digits"
      << '\n';
    for (const auto& r : rows) {
      s << std::setw(12) << r.j << std::setw(14) << r.iter_seconds << std::setw(14) << r.qpow_seconds
        << std::setw(12) << r.digits << '\n';
    }
  }
  return s.str();
}

int emit(const std::string& text, const Common& common, std::ostream& out, std::ostream& err) {
  if (common.output.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream file(common.output, std::ios::binary);
  if (!file) {
    err << "error: cannot open output file '" << common.output << "'\n";
    return kUsage;
  }
  file << text;
  return kOk;
}

}  // namespace

std::string csv_quote(const std::string& field) {
  std::string q = "\"";
  for (char c : field) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::vector<BenchRow> bench(SequenceOrder k, TermIndex j_max, TermIndex step) {
  if (step < 1 || j_max < step) throw std::invalid_argument("bench needs j_max >= step >= 1");
  using clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  for (TermIndex j = step; j <= j_max; j += step) {
    const auto t0 = clock::now();
    ExactInt iter = iterate_term(k, j);
    const auto t1 = clock::now();
    ExactInt qpow = fast_term(k, j);
    const auto t2 = clock::now();
    if (iter != qpow) {
      throw BenchMismatch("iterative and matrix-power values differ at k=" + std::to_string(k.value()) +
                          ", j=" + std::to_string(j));
    }
    BenchRow row;
    row.j = j;
    row.iter_seconds = std::chrono::duration<double>(t1 - t0).count();
    row.qpow_seconds = std::chrono::duration<double>(t2 - t1).count();
    row.digits = decimal_digits(iter);
    row.value = std::move(iter);
    rows.push_back(std::move(row));
  }
  return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-bonacci sequences, order-k^r matrices and identity verification", "kbonacci"};
  app.require_subcommand(1);

  Common common;

  TermArgs term_args;
  auto* term_cmd = app.add_subcommand("term", "print f_{j,k}");
  term_cmd->add_option("--k", term_args.k, "order (>= 2)")->required();
  term_cmd->add_option("--j", term_args.j, "index (may be negative)")->required();
  term_cmd->add_option("--method", term_args.method, "evaluation path")->check(CLI::IsMember({"iter", "qpow"}));
  add_common(term_cmd, common, {"plain", "json", "csv"});

  SeqArgs seq_args;
  auto* seq_cmd = app.add_subcommand("seq", "print f_{j,k} for j in [from, to]");
  seq_cmd->add_option("--k", seq_args.k, "order (>= 2)")->required();
  seq_cmd->add_option("--from", seq_args.from, "first index (may be negative)");
  seq_cmd->add_option("--to", seq_args.to, "last index");
  add_common(seq_cmd, common, {"plain", "json", "csv"});

  MatrixArgs matrix_args;
  auto* matrix_cmd = app.add_subcommand("matrix", "print an F, L or Q matrix of order k^r");
  matrix_cmd->add_option("--family", matrix_args.family, "F, L or Q")->check(CLI::IsMember({"F", "L", "Q", "f", "l", "q"}));
  matrix_cmd->add_option("--k", matrix_args.k, "order (>= 2)");
  matrix_cmd->add_option("--r", matrix_args.r, "level (>= 1)");
  matrix_cmd->add_option("--j", matrix_args.j, "index (F and L)");
  matrix_cmd->add_option("--method", matrix_args.method, "iter builds recursively, qpow uses F_1 Q^{j-1}")
      ->check(CLI::IsMember({"iter", "qpow"}));
  add_common(matrix_cmd, common, {"plain", "json", "csv"});

  BlocksArgs blocks_args;
  auto* blocks_cmd = app.add_subcommand("blocks", "print backward blocks with their observed properties");
  blocks_cmd->add_option("--k", blocks_args.k, "order (>= 2)")->required();
  blocks_cmd->add_option("--count", blocks_args.count, "number of blocks");
  add_common(blocks_cmd, common, {"plain", "json", "csv"});

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "run the identity checkers");
  verify_cmd->add_option("--suite", verify_args.suite, "'all' or comma-separated checker ids");
  verify_cmd->add_option("--min-k", verify_args.min_k, "smallest k");
  verify_cmd->add_option("--max-k", verify_args.max_k, "largest k");
  verify_cmd->add_option("--max-r", verify_args.max_r, "largest level r");
  verify_cmd->add_option("--max-r-fib", verify_args.max_r_fib, "largest level for k = 2 (default max-r + 1)");
  verify_cmd->add_option("--min-index", verify_args.min_index, "lowest index for checkers that probe negatives");
  verify_cmd->add_option("--max-n", verify_args.max_n, "largest n, j, m");
  verify_cmd->add_flag("--no-timestamp", verify_args.no_timestamp, "omit the timestamp from JSON");
  add_common(verify_cmd, common, {"plain", "json", "csv"});

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "time iterative vs matrix-power evaluation");
  bench_cmd->add_option("--k", bench_args.k, "order (>= 2)");
  bench_cmd->add_option("--j-max", bench_args.j_max, "largest index");
  bench_cmd->add_option("--step", bench_args.step, "index step");
  add_common(bench_cmd, common, {"plain", "json", "csv"});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::string what = e.what();
    std::replace(what.begin(), what.end(), '\n', ' ');
    err << "error: " << what << '\n';
    return kUsage;
  }

  try {
    std::string text;
    int status = kOk;
    if (*term_cmd) {
      text = do_term(term_args, common.format);
    } else if (*seq_cmd) {
      text = do_seq(seq_args, common.format);
    } else if (*matrix_cmd) {
      text = do_matrix(matrix_args, common.format);
    } else if (*blocks_cmd) {
      text = do_blocks(blocks_args, common.format);
    } else if (*verify_cmd) {
      bool passed = true;
      text = do_verify(verify_args, common.format, passed);
      status = passed ? kOk : kFailure;
    } else if (*bench_cmd) {
      text = do_bench(bench_args, common.format);
    }
    const int emitted = emit(text, common, out, err);
    return emitted != kOk ? emitted : status;
  } catch (const BenchMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace kbonacci::cli
