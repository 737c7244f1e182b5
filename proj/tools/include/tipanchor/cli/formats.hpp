#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tipanchor/calibration.hpp"
#include "tipanchor/design.hpp"
#include "tipanchor/errors.hpp"
#include "tipanchor/geometry.hpp"
#include "tipanchor/media.hpp"

namespace tipanchor::cli {

inline constexpr int kSchemaVersion = 1;

// Malformed input documents. Carries the file and field (or line) at fault.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Failure to read or write a file that does exist in the scenario.
class IoError : public tipanchor::Error {
 public:
  using tipanchor::Error::Error;
};

std::string ReadTextFile(const std::filesystem::path& path);
nlohmann::json ReadJsonFile(const std::filesystem::path& path);

// Writes through a temporary sibling file and renames it into place.
void WriteFileAtomically(const std::filesystem::path& path, std::string_view content);

// Typed field access that reports "<context>.<key>" on failure.
class Fields {
 public:
  Fields(const nlohmann::json& object, std::string context);

  bool Has(const std::string& key) const;
  double Number(const std::string& key) const;
  double Number(const std::string& key, double fallback) const;
  int Integer(const std::string& key, int fallback) const;
  std::string Text(const std::string& key) const;
  std::string Text(const std::string& key, const std::string& fallback) const;
  std::vector<double> Numbers(const std::string& key) const;
  const nlohmann::json& Object(const std::string& key) const;
  const nlohmann::json& Array(const std::string& key) const;
  std::string Path(const std::string& key) const { return context_ + "." + key; }

 private:
  const nlohmann::json& Get(const std::string& key) const;
  const nlohmann::json& object_;
  std::string context_;
};

// Media profile document:
//   {"schema": 1, "name": ..., "zeta": number|null, "rho": ..., "phi": ...,
//    "notes": ..., "grid": [{"beta_deg", "gamma_deg", "alpha_z", "alpha_x"}]}
MediaProfile ParseMediaProfile(const nlohmann::json& document, const std::string& context);
MediaProfile LoadMediaProfile(const std::filesystem::path& path);
nlohmann::json MediaProfileToJson(const MediaProfile& media);

// Root block: {"diameter_m", "length_m", "tilt_deg", "skin", "hair_factor", "mode"}.
AnchorGeometry ParseGeometry(const nlohmann::json& block, const std::string& context);
nlohmann::json GeometryToJson(const AnchorGeometry& geometry);

// AnchorConfig document: {"schema": 1, "device_weight_N": ..., "stages":
// [[root, ...], ...]}; a root may carry "count" to repeat it.
AnchorConfig ParseConfig(const nlohmann::json& document, const std::string& context);
nlohmann::json ConfigToJson(const AnchorConfig& config);

DesignConstraints ParseConstraints(const nlohmann::json& block, const std::string& context);

// CSV with exactly the header depth_m,force_N,regime.
std::vector<CalibrationSample> ParseSamplesCsv(std::string_view text, const std::string& source);
std::vector<CalibrationSample> LoadSamplesCsv(const std::filesystem::path& path);

}  // namespace tipanchor::cli
