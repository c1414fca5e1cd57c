#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace gmt::cli {

enum class Command { Generate, Dimension, Incidence, Beck, Tubes, Furstenberg, Project, Ortho, AuditConstants };

const char* to_string(Command c) noexcept;
Command command_from_string(const std::string& name);

inline constexpr const char* kSchemaVersion = "gmtlab.report/1";

struct RunConfig {
  Command command = Command::Generate;
  std::uint64_t seed = 0;
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path out_dir = ".";
  // Command-specific parameters, keyed by long flag name without dashes.
  nlohmann::json params = nlohmann::json::object();
};

struct ReportEnvelope {
  std::string schema_version = kSchemaVersion;
  std::string command;
  nlohmann::json config;
  double elapsed_ms = 0.0;
  nlohmann::json payload;
  std::vector<std::string> warnings;
  nlohmann::json provenance = nlohmann::json::array();
  std::vector<std::string> files;  // written, relative to out_dir

  nlohmann::json to_json() const;
};

/// Dispatches to the owning module, writes report.json plus CSV sidecars into out_dir and
/// returns the envelope. Library errors propagate as gmt::Error.
ReportEnvelope run(const RunConfig& config);

/// Exit status for a library error: 3 for InvariantViolation, 2 otherwise.
int exit_code_for(const std::exception& e) noexcept;

}  // namespace gmt::cli
