#include "tipanchor/cli/formats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "tipanchor/errors.hpp"
#include "tipanchor/units.hpp"

namespace tipanchor::cli {
namespace {

using nlohmann::json;

std::string Trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

double ParseDouble(std::string_view text, const std::string& where) {
  const std::string trimmed = Trim(text);
  double value = 0.0;
  const auto [end, ec] =
      std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
  if (ec != std::errc() || end != trimmed.data() + trimmed.size() || trimmed.empty() ||
      !std::isfinite(value)) {
    throw ParseError(where + ": '" + trimmed + "' is not a finite number");
  }
  return value;
}

void CheckSchema(const json& document, const std::string& context) {
  if (!document.is_object()) throw ParseError(context + ": expected a JSON object");
  if (document.contains("schema")) {
    const json& schema = document.at("schema");
    if (!schema.is_number_integer() || schema.get<int>() != kSchemaVersion) {
      throw ParseError(context + ".schema: unsupported schema version (expected 1)");
    }
  }
}

}  // namespace

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json ReadJsonFile(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void WriteFileAtomically(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path temp = path;
  temp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(temp, ignored);
      throw IoError(path.string() + ": write failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(temp, ignored);
    throw IoError(path.string() + ": " + ec.message());
  }
}

Fields::Fields(const json& object, std::string context)
    : object_(object), context_(std::move(context)) {
  if (!object_.is_object()) throw ParseError(context_ + ": expected a JSON object");
}

bool Fields::Has(const std::string& key) const {
  return object_.contains(key) && !object_.at(key).is_null();
}

const json& Fields::Get(const std::string& key) const {
  if (!object_.contains(key)) throw ParseError(Path(key) + ": missing required field");
  return object_.at(key);
}

double Fields::Number(const std::string& key) const {
  const json& value = Get(key);
  if (!value.is_number()) throw ParseError(Path(key) + ": expected a number");
  const double number = value.get<double>();
  if (!std::isfinite(number)) throw ParseError(Path(key) + ": expected a finite number");
  return number;
}

double Fields::Number(const std::string& key, double fallback) const {
  return Has(key) ? Number(key) : fallback;
}

int Fields::Integer(const std::string& key, int fallback) const {
  if (!Has(key)) return fallback;
  const json& value = object_.at(key);
  if (!value.is_number_integer()) throw ParseError(Path(key) + ": expected an integer");
  return value.get<int>();
}

std::string Fields::Text(const std::string& key) const {
  const json& value = Get(key);
  if (!value.is_string()) throw ParseError(Path(key) + ": expected a string");
  return value.get<std::string>();
}

std::string Fields::Text(const std::string& key, const std::string& fallback) const {
  return Has(key) ? Text(key) : fallback;
}

std::vector<double> Fields::Numbers(const std::string& key) const {
  const json& value = Array(key);
  std::vector<double> numbers;
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_number()) {
      throw ParseError(Path(key) + "[" + std::to_string(i) + "]: expected a number");
    }
    numbers.push_back(value[i].get<double>());
  }
  return numbers;
}

const json& Fields::Object(const std::string& key) const {
  const json& value = Get(key);
  if (!value.is_object()) throw ParseError(Path(key) + ": expected an object");
  return value;
}

const json& Fields::Array(const std::string& key) const {
  const json& value = Get(key);
  if (!value.is_array()) throw ParseError(Path(key) + ": expected an array");
  return value;
}

MediaProfile ParseMediaProfile(const json& document, const std::string& context) {
  CheckSchema(document, context);
  const Fields fields(document, context);
  MediaProfile media;
  media.name = fields.Text("name");
  const json& zeta = document.contains("zeta") ? document.at("zeta") : json();
  if (!document.contains("zeta")) throw ParseError(fields.Path("zeta") + ": missing required field");
  if (!zeta.is_null()) media.scale_factor = fields.Number("zeta");
  media.side_history_ratio = fields.Number("rho");
  media.volume_fraction = fields.Number("phi");
  media.notes = fields.Text("notes", "");

  const json& grid = fields.Array("grid");
  std::map<double, std::map<double, StressPair>> nodes;
  std::vector<double> gammas_seen;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Fields node(grid[i], fields.Path("grid") + "[" + std::to_string(i) + "]");
    const double beta = node.Number("beta_deg");
    const double gamma = node.Number("gamma_deg");
    const StressPair value{node.Number("alpha_z"), node.Number("alpha_x")};
    if (!nodes[beta].emplace(gamma, value).second) {
      throw ParseError(fields.Path("grid") + "[" + std::to_string(i) +
                       "]: duplicate node at beta " + std::to_string(beta) + ", gamma " +
                       std::to_string(gamma));
    }
    gammas_seen.push_back(gamma);
  }
  std::sort(gammas_seen.begin(), gammas_seen.end());
  gammas_seen.erase(std::unique(gammas_seen.begin(), gammas_seen.end()), gammas_seen.end());

  std::vector<double> betas;
  std::vector<double> gammas;
  std::vector<StressPair> values;
  for (double g : gammas_seen) gammas.push_back(DegreesToRadians(g));
  for (const auto& [beta, row] : nodes) {
    betas.push_back(DegreesToRadians(beta));
    for (double g : gammas_seen) {
      const auto found = row.find(g);
      if (found == row.end()) {
        throw ParseError(fields.Path("grid") + ": no node at beta " + std::to_string(beta) +
                         " deg, gamma " + std::to_string(g) + " deg (grid must be complete)");
      }
      values.push_back(found->second);
    }
  }
  try {
    media.stress_table = StressTable(std::move(betas), std::move(gammas), std::move(values));
    media.Validate();
  } catch (const tipanchor::Error& e) {
    throw ParseError(context + ": " + e.what());
  }
  return media;
}

MediaProfile LoadMediaProfile(const std::filesystem::path& path) {
  return ParseMediaProfile(ReadJsonFile(path), path.string());
}

json MediaProfileToJson(const MediaProfile& media) {
  json document = json::object();
  document["schema"] = kSchemaVersion;
  document["name"] = media.name;
  document["zeta"] = media.scale_factor ? json(*media.scale_factor) : json(nullptr);
  document["rho"] = media.side_history_ratio;
  document["phi"] = media.volume_fraction;
  document["notes"] = media.notes;
  json grid = json::array();
  const StressTable& table = media.stress_table;
  for (std::size_t i = 0; i < table.betas().size(); ++i) {
    for (std::size_t j = 0; j < table.gammas().size(); ++j) {
      const StressPair& v = table.at(i, j);
      grid.push_back({{"beta_deg", RadiansToDegrees(table.betas()[i])},
                      {"gamma_deg", RadiansToDegrees(table.gammas()[j])},
                      {"alpha_z", v.alpha_z},
                      {"alpha_x", v.alpha_x}});
    }
  }
  document["grid"] = std::move(grid);
  return document;
}

AnchorGeometry ParseGeometry(const json& block, const std::string& context) {
  const Fields fields(block, context);
  AnchorGeometry geometry;
  geometry.radius = 0.5 * fields.Number("diameter_m");
  geometry.length = fields.Number("length_m");
  geometry.tilt = DegreesToRadians(fields.Number("tilt_deg", 0.0));
  const std::string skin = fields.Text("skin", "hairless");
  if (skin == "hairy") {
    geometry.skin = Skin::kHairy;
    geometry.hair_factor = fields.Number("hair_factor", 1.4);
  } else if (skin != "hairless") {
    throw ParseError(fields.Path("skin") + ": expected 'hairless' or 'hairy'");
  }
  const std::string mode = fields.Text("mode", "tip_extender");
  if (mode == "rigid_intruder") {
    geometry.mode = InsertionMode::kRigidIntruder;
  } else if (mode != "tip_extender") {
    throw ParseError(fields.Path("mode") + ": expected 'tip_extender' or 'rigid_intruder'");
  }
  try {
    geometry.Validate();
  } catch (const tipanchor::Error& e) {
    throw ParseError(context + ": " + e.what());
  }
  return geometry;
}

json GeometryToJson(const AnchorGeometry& geometry) {
  json block = {{"diameter_m", geometry.Diameter()},
                {"length_m", geometry.length},
                {"tilt_deg", RadiansToDegrees(geometry.tilt)},
                {"skin", geometry.skin == Skin::kHairy ? "hairy" : "hairless"}};
  if (geometry.skin == Skin::kHairy) block["hair_factor"] = geometry.hair_factor;
  block["mode"] =
      geometry.mode == InsertionMode::kTipExtender ? "tip_extender" : "rigid_intruder";
  return block;
}

AnchorConfig ParseConfig(const json& document, const std::string& context) {
  CheckSchema(document, context);
  const Fields fields(document, context);
  AnchorConfig config;
  config.device_weight = fields.Number("device_weight_N");
  const json& stages = fields.Array("stages");
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const std::string stage_context = fields.Path("stages") + "[" + std::to_string(s) + "]";
    if (!stages[s].is_array()) throw ParseError(stage_context + ": expected an array of roots");
    std::vector<std::size_t> indices;
    for (std::size_t r = 0; r < stages[s].size(); ++r) {
      const std::string root_context = stage_context + "[" + std::to_string(r) + "]";
      const AnchorGeometry root = ParseGeometry(stages[s][r], root_context);
      const int count = Fields(stages[s][r], root_context).Integer("count", 1);
      if (count < 1) throw ParseError(root_context + ".count: must be >= 1");
      for (int k = 0; k < count; ++k) {
        indices.push_back(config.roots.size());
        config.roots.push_back(root);
      }
    }
    config.stages.push_back(std::move(indices));
  }
  return config;
}

json ConfigToJson(const AnchorConfig& config) {
  json stages = json::array();
  for (const auto& stage : config.stages) {
    json roots = json::array();
    for (std::size_t index : stage) roots.push_back(GeometryToJson(config.roots[index]));
    stages.push_back(std::move(roots));
  }
  return {{"schema", kSchemaVersion},
          {"device_weight_N", config.device_weight},
          {"stages", std::move(stages)}};
}

DesignConstraints ParseConstraints(const json& block, const std::string& context) {
  const Fields fields(block, context);
  DesignConstraints constraints;
  constraints.max_roots = fields.Integer("max_roots", constraints.max_roots);
  constraints.max_stages = fields.Integer("max_stages", constraints.max_stages);
  if (fields.Has("diameters_m")) constraints.diameters = fields.Numbers("diameters_m");
  if (fields.Has("lengths_m")) constraints.lengths = fields.Numbers("lengths_m");
  if (fields.Has("tilts_deg")) {
    constraints.tilts.clear();
    for (double t : fields.Numbers("tilts_deg")) constraints.tilts.push_back(DegreesToRadians(t));
  }
  if (fields.Has("hair_factors")) constraints.hair_factors = fields.Numbers("hair_factors");
  constraints.device_weight = fields.Number("device_weight_N", constraints.device_weight);
  if (fields.Has("max_total_cross_section_m2")) {
    constraints.max_total_cross_section = fields.Number("max_total_cross_section_m2");
  }
  try {
    constraints.Validate();
  } catch (const tipanchor::Error& e) {
    throw ParseError(context + ": " + e.what());
  }
  return constraints;
}

std::vector<CalibrationSample> ParseSamplesCsv(std::string_view text, const std::string& source) {
  std::vector<CalibrationSample> samples;
  std::size_t line_number = 0;
  bool header_seen = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string line = Trim(text.substr(start, end - start));
    start = end + 1;
    ++line_number;
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string where = source + ":" + std::to_string(line_number);
    std::vector<std::string> fields;
    std::stringstream stream(line);
    for (std::string field; std::getline(stream, field, ',');) fields.push_back(Trim(field));
    if (!header_seen) {
      if (fields != std::vector<std::string>{"depth_m", "force_N", "regime"}) {
        throw ParseError(where + ": header must be exactly depth_m,force_N,regime");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) {
      throw ParseError(where + ": expected 3 fields, found " + std::to_string(fields.size()));
    }
    CalibrationSample sample;
    sample.depth = ParseDouble(fields[0], where + " depth_m");
    sample.force = ParseDouble(fields[1], where + " force_N");
    const auto regime = ParseRegime(fields[2]);
    if (!regime) throw ParseError(where + " regime: unknown regime '" + fields[2] + "'");
    if (sample.depth < 0.0) throw ParseError(where + " depth_m: must be >= 0");
    sample.regime = *regime;
    samples.push_back(sample);
    if (end == text.size()) break;
  }
  if (!header_seen) throw ParseError(source + ": empty sample file");
  return samples;
}

std::vector<CalibrationSample> LoadSamplesCsv(const std::filesystem::path& path) {
  return ParseSamplesCsv(ReadTextFile(path), path.string());
}

}  // namespace tipanchor::cli
