#pragma once

#include "gaugelab/probe.hpp"

#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gaugelab {

inline constexpr const char* kVersion = "0.1.0";

/// Bad flags, missing required options, malformed values. Exit status 3.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CommandRequest {
  std::string subcommand;
  std::map<std::string, std::string> options;  // key without leading dashes
  std::string format = "json";
};

struct ReportEnvelope {
  std::string command;  // normalized echo of the request
  std::string version = kVersion;
  std::string status;   // verdict string, or "computed"
  nlohmann::json result = nlohmann::json::object();
  std::string evidence_domain;
  std::string checks;   // plain statement of what was checked, may be empty
  double wall_time = 0;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  int exit_code = 0;
};

struct SubcommandInfo {
  std::string name;
  std::string summary;
  std::vector<std::string> keys;      // accepted options
  std::vector<std::string> required;  // subset of keys without defaults
};

const std::vector<SubcommandInfo>& subcommands();

/// Dispatches to the owning module. Throws UsageError for unknown subcommands,
/// unknown keys and malformed values.
ReportEnvelope run_command(const CommandRequest& request);

/// json (envelope), csv (fixed header per subcommand) or text.
std::string emit_report(const ReportEnvelope& envelope, std::string_view format);

nlohmann::json probe_json(const ProbeReport& report);

/// Reads `key = value` lines; '#' starts a comment, blank lines and [section] headers are skipped.
std::map<std::string, std::string> read_config(const std::string& path);

/// Full command-line entry point; returns the process exit status.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace gaugelab
