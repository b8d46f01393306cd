#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpir/error.hpp"

namespace fpir::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kGuard = 3, kBoundFailed = 4 };

struct CommandResult {
  int exit_code = kOk;
  nlohmann::json json;
  /// Flattened rows for --csv; empty when the command has no tabular form.
  std::string csv;
  bool want_csv = false;
  /// Plain text output (help screens); printed verbatim when set.
  std::string text;
  /// Set on errors; written to stderr.
  nlohmann::json error;
};

/// Parse and run one command line (without the program name).
CommandResult dispatch(const std::vector<std::string>& args, const Limits& limits);

CommandResult run_batch(const std::string& manifest_path, const Limits& limits);

int exit_code_for(ErrorKind kind);
nlohmann::json error_json(ErrorKind kind, const std::string& message);

}  // namespace fpir::cli
