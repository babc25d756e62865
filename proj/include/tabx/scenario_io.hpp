#pragma once

// Scenario file format: a UTF-8 JSON document with "version": 1. Saving
// always produces the canonical form, so save(load(save(c))) == save(c).

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tabx/core.hpp"

namespace tabx {

inline constexpr int kScenarioFormatVersion = 1;

/// Malformed JSON text. offset is a byte offset into the document.
class ScenarioFormatError : public std::runtime_error {
 public:
  ScenarioFormatError(std::size_t offset, std::size_t line, std::size_t column, const std::string& what);
  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
};

enum class ScenarioCheck {
  full,         // validate_scenario
  zone_layout,  // validate_zone_layout, for zone-only fragments
  none,
};

struct LoadedScenario {
  ScenarioConfig config;
  std::vector<std::string> notes;  // defaults that were filled in
};

/// Schema problems and invariant violations throw ScenarioError with the
/// full report.
LoadedScenario scenario_from_json(const nlohmann::json& doc, ScenarioCheck check = ScenarioCheck::full);
LoadedScenario load_scenario(std::string_view bytes, ScenarioCheck check = ScenarioCheck::full);
LoadedScenario load_scenario_file(const std::filesystem::path& path, ScenarioCheck check = ScenarioCheck::full);

nlohmann::json scenario_to_json(const ScenarioConfig& config);
std::string save_scenario(const ScenarioConfig& config);
void save_scenario_file(const ScenarioConfig& config, const std::filesystem::path& path);

/// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace tabx
