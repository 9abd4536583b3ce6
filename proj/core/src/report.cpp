#include <algorithm>
#include <array>
#include <iomanip>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "lehn/runner.hpp"

namespace lehn {

namespace {

std::string format_params(const std::map<std::string, long>& params) {
  if (params.empty()) return "-";
  std::string out;
  for (const auto& [key, value] : params) {
    if (!out.empty()) out += " ";
    out += key + "=" + std::to_string(value);
  }
  return out;
}

std::string format_value(const std::optional<Rational>& v) {
  return v ? v->str() : "-";
}

std::string colored(const std::string& text, Status s, bool color) {
  if (!color) return text;
  const char* code = s == Status::Pass   ? "\033[32m"
                     : s == Status::Fail ? "\033[31m"
                                         : "\033[33m";
  return std::string(code) + text + "\033[0m";
}

std::string render_text(const SuiteReport& report, bool color) {
  std::ostringstream os;
  os << "suite: " << report.suite << "   order: " << report.order
     << "   version: " << report.version << "\n";

  struct Row {
    std::string check, params, status, computed, expected, note;
    Status raw_status;
  };
  std::vector<Row> rows;
  rows.reserve(report.results.size());
  for (const CheckResult& r : report.results) {
    std::string note = r.message;
    if (r.first_mismatch_order)
      note += (note.empty() ? "" : "; ") + std::string("at order ") +
              std::to_string(*r.first_mismatch_order);
    rows.push_back({r.check, format_params(r.params), status_label(r.status),
                    format_value(r.computed), format_value(r.expected),
                    note, r.status});
  }

  const std::array<std::string, 6> header = {"check",    "params",
                                             "status",   "computed",
                                             "expected", "note"};
  std::array<std::size_t, 6> width;
  for (std::size_t i = 0; i < 6; ++i) width[i] = header[i].size();
  for (const Row& row : rows) {
    const std::array<const std::string*, 6> cells = {
        &row.check, &row.params, &row.status,
        &row.computed, &row.expected, &row.note};
    for (std::size_t i = 0; i < 6; ++i)
      width[i] = std::max(width[i], cells[i]->size());
  }

  auto emit = [&os, &width](const std::array<const std::string*, 6>& cells,
                            const std::string& status_cell) {
    for (std::size_t i = 0; i < 6; ++i) {
      const std::string& text = i == 2 ? status_cell : *cells[i];
      std::size_t pad = width[i] - cells[i]->size();
      os << text;
      if (i + 1 < 6) os << std::string(pad + 2, ' ');
    }
    os << "\n";
  };

  const std::array<const std::string*, 6> head = {&header[0], &header[1],
                                                  &header[2], &header[3],
                                                  &header[4], &header[5]};
  emit(head, header[2]);
  for (const Row& row : rows) {
    const std::array<const std::string*, 6> cells = {
        &row.check, &row.params, &row.status,
        &row.computed, &row.expected, &row.note};
    emit(cells, colored(row.status, row.raw_status, color));
  }

  os << report.counts.total() << " checks: " << report.counts.pass
     << " pass, " << report.counts.fail << " fail, " << report.counts.error
     << " error";
  os << "   (" << std::fixed << std::setprecision(2)
     << report.runtime_seconds << "s)\n";
  return os.str();
}

std::string render_json(const SuiteReport& report) {
  nlohmann::json root;
  root["suite"] = report.suite;
  root["order"] = report.order;
  root["version"] = report.version;
  root["counts"] = {{"pass", report.counts.pass},
                    {"fail", report.counts.fail},
                    {"error", report.counts.error}};
  nlohmann::json results = nlohmann::json::array();
  for (const CheckResult& r : report.results) {
    nlohmann::json item;
    item["check"] = r.check;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [key, value] : r.params) params[key] = value;
    item["params"] = params;
    item["status"] = status_label(r.status);
    item["computed"] =
        r.computed ? nlohmann::json(r.computed->str()) : nlohmann::json();
    item["expected"] =
        r.expected ? nlohmann::json(r.expected->str()) : nlohmann::json();
    item["first_mismatch_order"] = r.first_mismatch_order
                                       ? nlohmann::json(*r.first_mismatch_order)
                                       : nlohmann::json();
    item["message"] = r.message;
    results.push_back(std::move(item));
  }
  root["results"] = std::move(results);
  return root.dump(2) + "\n";
}

}  // namespace

std::string render_report(const SuiteReport& report, ReportFormat format,
                          bool color) {
  if (format == ReportFormat::Json) return render_json(report);
  return render_text(report, color);
}

}  // namespace lehn
