#include <algorithm>
#include <filesystem>

#include "tabx/catalog.hpp"
#include "tabx/scenario_io.hpp"

namespace tabx {

namespace {

constexpr double kLayoutGap = 12.0;

CatalogKind kind_from_path(std::string_view path) {
  if (path.starts_with("challenges/")) return CatalogKind::challenge;
  if (path.starts_with("units/")) return CatalogKind::unit;
  if (path.starts_with("zones/")) return CatalogKind::zone;
  throw std::runtime_error("catalog file outside a known folder: " + std::string(path));
}

std::map<std::string, CatalogEntry> load_catalog() {
  std::map<std::string, CatalogEntry> entries;
  for (const auto& file : detail::embedded_scenario_files()) {
    CatalogEntry e;
    e.path = file.path;
    e.kind = kind_from_path(e.path);
    const auto check = e.kind == CatalogKind::zone ? ScenarioCheck::zone_layout : ScenarioCheck::full;
    e.config = load_scenario(file.text, check).config;
    const std::string stem = std::filesystem::path(e.path).stem().string();
    if (e.config.name.empty()) e.config.name = stem;
    if (e.config.name != stem) {
      throw std::runtime_error(e.path + ": name '" + e.config.name + "' does not match the file name");
    }
    e.name = e.config.name;
    if (!entries.emplace(e.name, e).second) throw std::runtime_error("duplicate catalog name " + e.name);
  }
  return entries;
}

// Columns of units facing the other team across a gap at the field center,
// extra columns stacking outward. The enemy placement is the ally placement
// turned half a revolution about the field center, so mirrored compositions
// are point-symmetric.
void place_team(ScenarioConfig& config, const UnitCounts& counts, int team, double heading_deg) {
  const FieldSpec& f = config.field;
  const double usable = f.height - 2.0 * f.margin;
  std::vector<std::vector<char>> columns(1);
  double filled = 0.0;
  for (std::size_t k = 0; k < kUnitCodes.size(); ++k) {
    const double slot = 2.0 * preset_for_code(kUnitCodes[k]).body_radius + 1.0;
    for (int n = 0; n < counts[k]; ++n) {
      if (!columns.back().empty() && filled + slot > usable) {
        columns.emplace_back();
        filled = 0.0;
      }
      columns.back().push_back(kUnitCodes[k]);
      filled += slot;
    }
  }

  const double dir = team == kAllyTeam ? -1.0 : 1.0;
  double edge = f.width / 2.0 + dir * kLayoutGap / 2.0;
  for (const auto& column : columns) {
    double max_r = 0.0;
    double height = 0.0;
    for (char c : column) {
      max_r = std::max(max_r, preset_for_code(c).body_radius);
      height += 2.0 * preset_for_code(c).body_radius + 1.0;
    }
    const double x = edge + dir * max_r;
    edge = x + dir * (max_r + 1.0);
    double y = f.height / 2.0 + dir * height / 2.0;
    for (char c : column) {
      const double slot = 2.0 * preset_for_code(c).body_radius + 1.0;
      config.units.push_back(place_preset(std::string(1, c), team, {x, y - dir * slot / 2.0}, heading_deg));
      y -= dir * slot;
    }
  }
}

}  // namespace

std::string_view to_string(CatalogKind kind) {
  switch (kind) {
    case CatalogKind::challenge: return "challenge";
    case CatalogKind::unit: return "unit";
    case CatalogKind::zone: return "zone";
  }
  return "challenge";
}

const std::map<std::string, CatalogEntry>& catalog() {
  static const std::map<std::string, CatalogEntry> entries = load_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(std::string_view name) {
  const auto& entries = catalog();
  auto it = entries.find(std::string(name));
  if (it == entries.end()) throw std::out_of_range("unknown scenario '" + std::string(name) + "'");
  return it->second;
}

ScenarioConfig compose(const ScenarioConfig& units, const ScenarioConfig& zones) {
  ScenarioConfig out = units;
  out.name = units.name + "_" + zones.name;
  out.zones = zones.zones;
  out.max_zones = std::max(units.max_zones, static_cast<int>(zones.zones.size()));
  return out;
}

ScenarioConfig layout_composition(const Composition& composition, std::string_view enemy_tier,
                                  const FieldSpec& field) {
  ScenarioConfig config;
  Composition units_only = composition;
  units_only.zones = {};
  units_only.variant.clear();
  config.name = format_composition_name(units_only);
  config.field = field;
  config.teams = default_teams(enemy_tier);
  place_team(config, composition.ally, kAllyTeam, 0.0);
  place_team(config, composition.enemy, kEnemyTeam, 180.0);
  config.max_units = static_cast<int>(config.units.size());
  return config;
}

ScenarioConfig scenario_by_name(std::string_view name) {
  const auto& entries = catalog();
  if (auto it = entries.find(std::string(name)); it != entries.end()) {
    if (it->second.kind == CatalogKind::zone) {
      throw std::invalid_argument("zone scenario '" + std::string(name) + "' needs a unit scenario, e.g. 1Fvs1F_" +
                                  std::string(name));
    }
    return it->second.config;
  }

  auto unit_part = name;
  std::string_view zone_part;
  if (auto pos = name.find('_'); pos != std::string_view::npos) {
    unit_part = name.substr(0, pos);
    zone_part = name.substr(pos + 1);
  }

  ScenarioConfig units;
  if (auto it = entries.find(std::string(unit_part)); it != entries.end() && it->second.kind == CatalogKind::unit) {
    units = it->second.config;
  } else {
    units = layout_composition(parse_composition_name(unit_part));
  }
  if (zone_part.empty()) return units;

  const CatalogEntry& zones = catalog_entry(zone_part);
  if (zones.kind != CatalogKind::zone) {
    throw std::invalid_argument("'" + std::string(zone_part) + "' is not a zone scenario");
  }
  return compose(units, zones.config);
}

}  // namespace tabx
