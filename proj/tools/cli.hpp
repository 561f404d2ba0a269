#pragma once

#include "rwde/io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rwde::cli {

enum ExitStatus : int { kPass = 0, kCheckFailed = 1, kParseError = 2, kValidationFailed = 3 };

struct RunConfig {
  std::string command;
  /// A file path, or the name of a bundled graph.
  std::string graph;
  std::vector<std::string> alpha;   // "id=value"
  std::vector<std::string> lambda;  // "id=value"; complex "a+bi" accepted by transport
  std::vector<std::string> tree;    // edge ids
  std::uint64_t seed = 1;
  std::optional<std::size_t> samples;
  std::optional<double> tol;
  std::string out;
  bool exact = true;
  /// transport only: intermediate waypoints, each "id=value,id=value", and the endpoint.
  std::vector<std::string> via;
  std::string to;
  std::string system = "hat";
};

struct RunOutcome {
  int status = kPass;
  Json report;
};

const std::vector<std::string>& command_names();

/// Runs one command. Never throws for bad input: problems become a report
/// with an "error" entry and the matching exit status. Writes the report to
/// config.out when it is set.
RunOutcome run(const RunConfig& config);

/// Parses argv into a RunConfig (CLI11). Returns nullopt after printing help
/// or a usage error; `status` then holds the exit code.
std::optional<RunConfig> parse_command_line(int argc, char** argv, int& status);

}  // namespace rwde::cli
