#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "lehn/error.hpp"
#include "lehn/runner.hpp"
#include "lehn/version.hpp"

namespace {

bool parse_long(const std::string& text, long& out) {
  if (text.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stol(text, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == text.size();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact generating-series verification suite"};
  app.set_version_flag("--version", std::string(lehn::kVersion));

  std::string suite = "all";
  app.add_option("--suite", suite,
                 "Suite to run: all, a built-in name, 'default', or a "
                 "manifest stem")
      ->capture_default_str();

  int order = -1;
  app.add_option("--order", order, "Override the truncation order")
      ->check(CLI::NonNegativeNumber);

  std::vector<std::string> manifests;
  app.add_option("--manifest", manifests,
                 "Extra manifest file; forms a suite named by its stem")
      ->allow_extra_args(false);

  std::vector<std::string> params;
  app.add_option("--param", params,
                 "Keep only instances with this parameter value (key=value)")
      ->allow_extra_args(false);

  std::string format = "text";
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::string out_path;
  app.add_option("--out", out_path, "Write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    std::cout << lehn::kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  lehn::RunOptions options;
  if (order >= 0) options.order_override = order;
  options.manifest_paths = manifests;
  for (const std::string& p : params) {
    auto eq = p.find('=');
    long value = 0;
    if (eq == std::string::npos || eq == 0 ||
        !parse_long(p.substr(eq + 1), value)) {
      std::cerr << "error: --param expects key=value with an integer value: "
                << p << "\n";
      return 2;
    }
    options.param_filter[p.substr(0, eq)] = value;
  }

  lehn::SuiteReport report;
  try {
    report = lehn::run_suite(suite, options);
  } catch (const lehn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  bool color = format == "text" && out_path.empty() &&
               std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO);
  std::string rendered = lehn::render_report(
      report,
      format == "json" ? lehn::ReportFormat::Json : lehn::ReportFormat::Text,
      color);

  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    out << rendered;
    if (!out.good()) {
      std::cerr << "error: failed writing " << out_path << "\n";
      return 2;
    }
  }
  return report.all_passed() ? 0 : 1;
}
