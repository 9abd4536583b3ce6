#ifndef LEHN_RUNNER_HPP
#define LEHN_RUNNER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lehn/rational.hpp"

namespace lehn {

enum class Status { Pass, Fail, ErrorStatus };

std::string status_label(Status s);  // "pass" / "fail" / "error"

// One executed check instance: a named check at one point of its parameter
// grid.  Pass means computed == expected exactly.
struct CheckResult {
  std::string check;
  std::map<std::string, long> params;
  Status status = Status::Pass;
  std::optional<Rational> computed;
  std::optional<Rational> expected;
  std::optional<int> first_mismatch_order;
  std::string message;
};

struct SuiteCounts {
  int pass = 0;
  int fail = 0;
  int error = 0;
  int total() const { return pass + fail + error; }
};

struct SuiteReport {
  std::string suite;
  int order = 0;
  std::string version;
  std::vector<CheckResult> results;
  SuiteCounts counts;
  double runtime_seconds = 0.0;

  bool all_passed() const { return counts.fail == 0 && counts.error == 0; }
};

struct RunOptions {
  std::optional<int> order_override;
  // Positive selector: an instance is kept iff every filter key is one of
  // its parameters and the bound value matches.
  std::map<std::string, long> param_filter;
  // Extra manifest files, each forming a suite named by its filename stem.
  std::vector<std::string> manifest_paths;
};

// The built-in suites, in canonical execution order.
const std::vector<std::string>& builtin_suite_names();

// Source text of the manifest embedded in the library (suite "default").
const std::string& default_manifest();

// Runs one suite ("all" = every built-in suite, then "default", then the
// user manifests in the order given).  Throws Error for an unknown suite
// and ParseError (with the file path prepended) for a bad manifest.
SuiteReport run_suite(const std::string& suite, const RunOptions& options = {});

enum class ReportFormat { Text, Json };

// Text: aligned table keyed by (check, params), plus a summary line with the
// runtime.  Json: stable sorted-key schema, rationals as decimal strings,
// no timing fields, byte-identical across runs on identical input.
std::string render_report(const SuiteReport& report, ReportFormat format,
                          bool color = false);

}  // namespace lehn

#endif  // LEHN_RUNNER_HPP
