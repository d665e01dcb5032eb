#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "numeric.hpp"

namespace semilin {

// One line of a verification run.  status is "pass", "fail", or a string
// starting with "skipped" that carries its own reason.
struct ReportRow {
  std::string check;
  nlohmann::json params;  // always an object, possibly empty
  std::string status;
  std::string witness;  // empty means nothing to show
};

struct Report {
  std::string suite;
  std::vector<ReportRow> rows;

  void add(const std::string& check, nlohmann::json params, bool ok,
           const std::string& witness = "") {
    rows.push_back({check, std::move(params), ok ? "pass" : "fail", witness});
  }

  void skip(const std::string& check, nlohmann::json params, const std::string& reason) {
    rows.push_back({check, std::move(params), "skipped: " + reason, ""});
  }

  void absorb(const Report& other) {
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
  }

  long count_with(const char* prefix) const {
    long c = 0;
    for (const auto& r : rows)
      if (r.status.rfind(prefix, 0) == 0) ++c;
    return c;
  }
  long passed() const { return count_with("pass"); }
  long failed() const { return count_with("fail"); }
  long skipped() const { return count_with("skipped"); }

  int exit_code() const { return failed() ? 1 : 0; }

  // Rows may be produced in any order; emission is canonical.
  void sort_rows() {
    std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
      if (a.check != b.check) return a.check < b.check;
      return a.params.dump() < b.params.dump();
    });
  }

  nlohmann::json to_json() const {
    nlohmann::json out;
    out["suite"] = suite;
    out["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json row;
      row["check"] = r.check;
      row["params"] = r.params.is_null() ? nlohmann::json::object() : r.params;
      row["status"] = r.status;
      row["witness"] = r.witness.empty() ? nlohmann::json() : nlohmann::json(r.witness);
      out["rows"].push_back(std::move(row));
    }
    out["summary"] = {{"pass", passed()}, {"fail", failed()}, {"skipped", skipped()}};
    return out;
  }

  std::string table() const {
    std::string out;
    for (const auto& r : rows) {
      std::string pstr = r.params.empty() ? "" : " " + r.params.dump();
      out += r.status + "  " + r.check + pstr;
      if (!r.witness.empty()) out += "  [" + r.witness + "]";
      out += "\n";
    }
    out += "summary: " + std::to_string(passed()) + " pass, " + std::to_string(failed()) +
           " fail, " + std::to_string(skipped()) + " skipped\n";
    return out;
  }
};

}  // namespace semilin
