#pragma once

// Batch front end: graph loading, command dispatch and report assembly.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "heat/counterexample.hpp"
#include "heat/report.hpp"

namespace heat::cli {

enum ExitCode : int { kPass = 0, kAuditFailure = 1, kUsage = 2 };

struct RunConfig {
  std::string command;
  std::optional<std::string> graph_file;
  std::optional<std::string> family;
  std::vector<std::string> data;      // "label=value"; empty means delta at the root
  std::vector<std::string> vertices;  // evaluation vertices; empty means B_rmax(root)
  std::vector<double> times;
  double tol = 1e-11;
  int kmax = 10;
  int rmax = 5;
  bool exact = false;

  // radius
  std::optional<double> a1;
  std::optional<std::string> a2;
  std::optional<std::string> a3;
  std::optional<double> c;
  double delta = 0.1;
  double radius = 1.0;

  // backward
  std::optional<double> degree_bound;

  // counterexample
  FlatBumpParams bump;
  std::int64_t xmax = 60;

  std::optional<std::string> out;
  std::string format = "json";
};

/// Thrown for configurations that no command accepts; maps to exit 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CommandOutput {
  int exit_code = kPass;
  Json report;
  std::vector<std::vector<std::string>> table;  // CSV projection, header first
};

/// Runs one command. Exceptions propagate.
CommandOutput run(const RunConfig& config);

/// Full entry point: parses args (without the program name), runs, writes
/// the report to --out or `out`, and maps errors to exit codes on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string to_csv(const std::vector<std::vector<std::string>>& table);

}  // namespace heat::cli
