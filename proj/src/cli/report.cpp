#include "cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace accel::cli {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skip: return "SKIP";
  }
  return "?";
}

CheckRecord make_check(std::string name, std::string backends, double residual, double tol, std::string note) {
  Status s = residual <= tol ? Status::Pass : Status::Fail;
  return {std::move(name), std::move(backends), residual, tol, s, std::move(note)};
}

CheckRecord make_skip(std::string name, std::string backends, std::string note) {
  return {std::move(name), std::move(backends), 0, 0, Status::Skip, std::move(note)};
}

bool Report::passed() const {
  for (const auto& c : checks)
    if (c.status == Status::Fail) return false;
  return true;
}

json Report::to_json() const {
  json j = json::object();
  j["command"] = command;
  j["passed"] = passed();
  json cs = json::array();
  for (const auto& c : checks) {
    json r = {{"name", c.name}, {"backends", c.backends}, {"status", cli::to_string(c.status)}};
    if (c.status != Status::Skip) {
      r["residual"] = c.residual;
      r["tolerance"] = c.tolerance;
    }
    if (!c.note.empty()) r["note"] = c.note;
    cs.push_back(r);
  }
  j["checks"] = cs;
  if (table) {
    json rows = json::array();
    for (const auto& row : table->rows) {
      json o = json::object();
      for (size_t k = 0; k < row.size(); ++k) o[table->columns[k]] = row[k];
      rows.push_back(o);
    }
    j["rows"] = rows;
  }
  if (!data.empty()) j["data"] = data;
  j["provenance"] = provenance;
  return j;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void write(const json& j, std::string& out, int indent) {
  std::string pad(indent, ' '), inner(indent + 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + json(it.key()).dump() + ": ";
        write(it.value(), out, indent + 2);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      out += "[\n";
      for (size_t k = 0; k < j.size(); ++k) {
        if (k) out += ",\n";
        out += inner;
        write(j[k], out, indent + 2);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: {
      double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

std::string cell_text(const json& c) {
  if (c.is_null()) return "";
  if (c.is_string()) return c.get<std::string>();
  if (c.is_number_float()) return format_number(c.get<double>());
  return c.dump();
}

}  // namespace

std::string dump_json(const json& j) {
  std::string out;
  write(j, out, 0);
  return out + "\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string to_csv(const Table& t) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t k = 0; k < cells.size(); ++k) out += (k ? "," : "") + csv_field(cells[k]);
    out += "\r\n";
  };
  line(t.columns);
  for (const auto& row : t.rows) {
    std::vector<std::string> cells;
    for (const auto& c : row) cells.push_back(cell_text(c));
    line(cells);
  }
  return out;
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  os << "accel " << r.command << "\n";
  if (!r.data.empty()) {
    for (auto it = r.data.begin(); it != r.data.end(); ++it) {
      std::string v = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
      os << "  " << it.key() << ": " << v << "\n";
    }
  }
  if (r.table) {
    os << "\n";
    for (size_t k = 0; k < r.table->columns.size(); ++k) os << (k ? "  " : "") << r.table->columns[k];
    os << "\n";
    for (const auto& row : r.table->rows) {
      for (size_t k = 0; k < row.size(); ++k) {
        std::string s = row[k].is_number_float() ? [&] {
          char b[32];
          std::snprintf(b, sizeof b, "%.10g", row[k].get<double>());
          return std::string(b);
        }() : cell_text(row[k]);
        os << (k ? "  " : "") << s;
      }
      os << "\n";
    }
  }
  if (!r.checks.empty()) {
    os << "\n";
    char buf[256];
    for (const auto& c : r.checks) {
      if (c.status == Status::Skip)
        std::snprintf(buf, sizeof buf, "  %-4s %-32s %-22s", to_string(c.status), c.name.c_str(), c.backends.c_str());
      else
        std::snprintf(buf, sizeof buf, "  %-4s %-32s %-22s residual %.3e  tol %.1e", to_string(c.status),
                      c.name.c_str(), c.backends.c_str(), c.residual, c.tolerance);
      os << buf;
      if (!c.note.empty()) os << "  (" << c.note << ")";
      os << "\n";
    }
    os << "\n" << (r.passed() ? "all checks passed" : "CHECK FAILURE") << "\n";
  }
  return os.str();
}

}  // namespace accel::cli
