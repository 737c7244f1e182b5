#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "json.hpp"
#include "tipanchor/cli/report.hpp"

namespace tipanchor::cli {

enum class CommandKind {
  kSimulate,
  kCalibrate,
  kCriticalDepth,
  kSweepDiameter,
  kSweepAngle,
  kEvaluate,
  kOptimize,
};

std::optional<CommandKind> ParseCommandKind(const std::string& name);
std::optional<OutputFormat> ParseOutputFormat(const std::string& name);

// Flag-level overrides applied on top of a scenario document.
struct Overrides {
  std::optional<std::string> media;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<double> element_size;
};

struct ScenarioResult {
  Report report;
  OutputFormat format = OutputFormat::kSummary;
  std::optional<std::filesystem::path> output_path;
};

// Parses and executes one scenario. Relative paths resolve against
// `base_dir`. Side artifacts (media_out, config_out) are written here; the
// main report is returned for the caller to emit.
ScenarioResult ExecuteScenario(const nlohmann::json& scenario, const std::filesystem::path& base_dir,
                               const Overrides& overrides = {});

// Full CLI path: execute, write artifacts atomically, print the summary to
// `out`. Returns 0 on success, 1 on model or I/O errors, 2 on parse errors.
int RunScenario(const nlohmann::json& scenario, const std::filesystem::path& base_dir,
                const Overrides& overrides, std::ostream& out, std::ostream& err);
int RunScenarioFile(const std::filesystem::path& path, const Overrides& overrides,
                    std::ostream& out, std::ostream& err);

}  // namespace tipanchor::cli
