#pragma once

// Predefined scenarios shipped under data/scenarios: challenges (fixed units
// and zones), unit scenarios (no zones) and zone scenarios (no units). Unit
// and zone scenarios combine by name, "<units>_<zones>".

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tabx/core.hpp"

namespace tabx {

namespace detail {
struct EmbeddedScenarioFile {
  const char* path;  // relative to data/scenarios
  const char* text;
};
const std::vector<EmbeddedScenarioFile>& embedded_scenario_files();
}  // namespace detail

enum class CatalogKind { challenge, unit, zone };
std::string_view to_string(CatalogKind kind);

struct CatalogEntry {
  std::string name;
  CatalogKind kind = CatalogKind::challenge;
  std::string path;  // e.g. "challenges/crossfire.json"
  ScenarioConfig config;
};

/// Parsed once on first use. Throws ScenarioError if a shipped file is invalid.
const std::map<std::string, CatalogEntry>& catalog();

/// Throws std::out_of_range for unknown names.
const CatalogEntry& catalog_entry(std::string_view name);

/// Units, teams and physics from `units`, zones from `zones`; named
/// "<units.name>_<zones.name>".
ScenarioConfig compose(const ScenarioConfig& units, const ScenarioConfig& zones);

/// Deterministic two-column placement for a composition: allies on the left
/// facing +x, enemies on the right facing -x, enemy team heuristic at tier.
ScenarioConfig layout_composition(const Composition& composition, std::string_view enemy_tier = "medium",
                                  const FieldSpec& field = {});

/// Challenge or unit-scenario name, "<units>_<zones>" combination, or any
/// composition name (auto layout when the unit part is not in the catalog).
ScenarioConfig scenario_by_name(std::string_view name);

}  // namespace tabx
