#include "quermass/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace quermass {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string fmt(double v) { return format_double(v); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

std::string flatten_residuals(const InequalityReport& r) {
  std::string out;
  for (const auto& p : r.side_condition_residuals) {
    if (!out.empty()) out += ';';
    out += p.first + "=" + fmt(p.second);
  }
  return out;
}

}  // namespace

std::string reports_to_csv(const std::vector<InequalityReport>& reports) {
  std::string out =
      "name,lhs,rhs,gap,relative_gap,tolerance,pass,side_condition_residuals,metadata\n";
  for (const auto& r : reports) {
    out += csv_escape(r.name) + ',' + fmt(r.lhs) + ',' + fmt(r.rhs) + ',' + fmt(r.gap) + ',' +
           fmt(r.relative_gap) + ',' + fmt(r.tolerance_used) + ',' + (r.pass ? "1" : "0") + ',' +
           csv_escape(flatten_residuals(r)) + ',' + csv_escape(r.metadata) + '\n';
  }
  return out;
}

std::string reports_to_json(const std::vector<InequalityReport>& reports) {
  std::string out = "[";
  bool first = true;
  for (const auto& r : reports) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "  {\"name\": \"" + json_escape(r.name) + "\", \"lhs\": " + fmt(r.lhs) +
           ", \"rhs\": " + fmt(r.rhs) + ", \"gap\": " + fmt(r.gap) +
           ", \"relative_gap\": " + fmt(r.relative_gap) +
           ", \"tolerance\": " + fmt(r.tolerance_used) +
           ", \"pass\": " + (r.pass ? "true" : "false") + ", \"side_condition_residuals\": {";
    bool rf = true;
    for (const auto& p : r.side_condition_residuals) {
      if (!rf) out += ", ";
      rf = false;
      out += "\"" + json_escape(p.first) + "\": " + fmt(p.second);
    }
    out += "}, \"metadata\": \"" + json_escape(r.metadata) + "\"}";
  }
  out += "\n]\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace quermass
