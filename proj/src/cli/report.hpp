#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace accel::cli {

using nlohmann::json;  // objects are std::map backed, so keys come out sorted

enum class Status { Pass, Fail, Skip };
const char* to_string(Status s);

struct CheckRecord {
  std::string name;
  std::string backends;
  double residual = 0;
  double tolerance = 0;
  Status status = Status::Skip;
  std::string note;
};

// residual <= tol passes; NaN fails.
CheckRecord make_check(std::string name, std::string backends, double residual, double tol, std::string note = {});
CheckRecord make_skip(std::string name, std::string backends, std::string note);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;  // numbers, strings or null (empty cell)
};

struct Report {
  std::string command;
  std::vector<CheckRecord> checks;
  std::optional<Table> table;
  json data = json::object();
  json provenance = json::object();

  // Every non-skipped check passes.
  bool passed() const;
  json to_json() const;
};

// Compact-ish JSON with numbers as %.17g; non-finite numbers become null.
std::string dump_json(const json& j);

std::string csv_field(const std::string& s);
std::string to_csv(const Table& t);
std::string to_text(const Report& r);

std::string format_number(double v);

}  // namespace accel::cli
