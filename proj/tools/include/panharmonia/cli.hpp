// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace panharmonia::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Everything needed to rerun a command. Embedded in every --report file.
struct RunManifest {
  std::string subcommand;
  /// Long option name (without dashes) -> value as parsed; flags are "true"/"false".
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string timestamp;
};

/// Runs one subcommand. `args` excludes the program name.
/// Returns 0 on success, 1 when a check fails, 2 on usage or domain errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string manifest_to_json(const RunManifest& manifest);
/// Reads the manifest embedded in a --report file. Throws ParseError.
RunManifest manifest_from_report(std::string_view report_json);
/// Arguments that reproduce the manifest's run. `report_path` replaces the recorded
/// --report destination when non-empty.
std::vector<std::string> manifest_to_argv(const RunManifest& manifest, const std::string& report_path = "");

}  // namespace panharmonia::cli
