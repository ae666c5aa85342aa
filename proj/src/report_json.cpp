#include "gaugelab/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gaugelab {

namespace {

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Scalars print bare; containers print as compact JSON.
std::string text_value(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return num17(v.get<double>());
  return v.dump();
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

nlohmann::json probe_json(const ProbeReport& report) {
  nlohmann::json constants = nlohmann::json::object();
  for (const auto& [k, v] : report.constants) constants[k] = v;
  nlohmann::json j = {{"probe", report.probe},
                      {"verdict", verdict_string(report.verdict)},
                      {"constants", constants},
                      {"witness", report.witness},
                      {"evidence", report.evidence},
                      {"details", report.details}};
  if (!report.message.empty()) j["message"] = report.message;
  return j;
}

std::string emit_report(const ReportEnvelope& env, std::string_view format) {
  if (format == "json") {
    nlohmann::json j = {{"command", env.command},
                        {"version", env.version},
                        {"status", env.status},
                        {"result", env.result},
                        {"evidence_domain", env.evidence_domain},
                        {"wall_time_s", env.wall_time}};
    if (!env.checks.empty()) j["checks"] = env.checks;
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    std::ostringstream os;
    for (std::size_t i = 0; i < env.csv_header.size(); ++i) os << (i ? "," : "") << csv_cell(env.csv_header[i]);
    os << "\n";
    for (const auto& row : env.csv_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
      os << "\n";
    }
    return os.str();
  }
  if (format == "text") {
    std::ostringstream os;
    os << "command: " << env.command << "\n";
    if (!env.checks.empty()) os << "checks: " << env.checks << "\n";
    os << "status: " << env.status << "\n";
    if (!env.evidence_domain.empty()) os << "domain: " << env.evidence_domain << "\n";
    for (const auto& [k, v] : env.result.items()) os << k << ": " << text_value(v) << "\n";
    return os.str();
  }
  throw UsageError("unknown format '" + std::string(format) + "' (json, csv, text)");
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    out[key] = value;
  }
  return out;
}

}  // namespace gaugelab
