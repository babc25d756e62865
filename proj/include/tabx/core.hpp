#pragma once

// Domain types shared by every TABX module.

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tabx/vec2.hpp"

namespace tabx {

inline constexpr int kAllyTeam = 0;
inline constexpr int kEnemyTeam = 1;
inline constexpr int kNoTeam = -1;

inline constexpr double kDefaultSightAngle = 2.0 * std::numbers::pi / 3.0;
inline constexpr double kDefaultSightRange = 20.0;

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Wraps an angle into (-pi, pi].
double wrap_angle(double radians);

/// Static unit attributes. Negative attack_damage heals.
struct UnitSpec {
  std::string name = "custom";
  double max_health = 60.0;
  double body_radius = 1.0;
  double body_mass = 1.0;
  double speed = 1.0;
  double attack_damage = 10.0;
  double attack_range = 2.5;
  double attack_cooldown = 2.0;
  double sight_angle = kDefaultSightAngle;  // radians, full fan width
  double sight_range = kDefaultSightRange;
  int space_occupied = 1;  // editor grid cells only
  bool kinematic = false;

  bool operator==(const UnitSpec&) const = default;
};

/// One preset per letter of the composition alphabet, in canonical order.
inline constexpr std::string_view kUnitCodes = "FSKMACDHP";

const std::vector<UnitSpec>& unit_presets();
/// Lookup by preset name ("farmer", case-insensitive) or single-letter code ("F").
std::optional<UnitSpec> find_preset(std::string_view name_or_code);
const UnitSpec& preset_for_code(char code);

struct UnitState {
  UnitSpec spec;
  int team = kNoTeam;
  Vec2 position;
  Vec2 velocity;
  Vec2 impulse_carry;  // velocity delta from the last contact resolution
  double heading = 0.0;
  double health = 0.0;
  double cooldown_timer = 0.0;
  double reveal_timer = 0.0;
  bool alive = false;
  bool active = false;

  bool operator==(const UnitState&) const = default;
};

enum class ZoneType : std::uint8_t { lava, bush, swamp, inactive };

std::string_view to_string(ZoneType type);
std::optional<ZoneType> parse_zone_type(std::string_view text);

struct Zone {
  ZoneType type = ZoneType::inactive;
  Vec2 center;
  Vec2 semi_axes{1.0, 1.0};
  double effect = 0.0;

  /// Center-inside-ellipse containment.
  bool contains(Vec2 p) const;

  bool operator==(const Zone&) const = default;
};

/// Product of the speed multipliers of every swamp containing p.
double swamp_multiplier(std::span<const Zone> zones, Vec2 p);

/// Sum of lava damage rates (HP per sim-second) at p.
double lava_rate(std::span<const Zone> zones, Vec2 p);

struct PhysicsParams {
  double dt = 0.1;
  double restitution = 0.5;
  double penetration_slop = 0.01;
  double correction_percent = 0.8;
  double rotation_step_deg = 30.0;
  double boundary_damage_coeff = 0.1;
  double reveal_duration = 1.0;
  bool enable_noop = false;

  double rotation_step() const { return deg_to_rad(rotation_step_deg); }

  bool operator==(const PhysicsParams&) const = default;
};

struct HeuristicParams {
  double epsilon = 0.2;
  double aggressive_threshold = 0.3;
  double assassin_speed_threshold = 1.4;
  double ranger_range_threshold = 10.0;

  bool operator==(const HeuristicParams&) const = default;
};

inline constexpr std::array<std::string_view, 5> kHeuristicTiers = {"random", "novice", "medium",
                                                                     "advanced", "expert"};

/// Difficulty tier by name; nullopt for unknown names.
std::optional<HeuristicParams> heuristic_tier(std::string_view name);

struct FieldSpec {
  double width = 40.0;
  double height = 40.0;
  double margin = 2.0;

  bool contains(Vec2 p) const { return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height; }
  Vec2 extent() const { return {width, height}; }

  bool operator==(const FieldSpec&) const = default;
};

enum class Controller : std::uint8_t { external, heuristic, random };

std::string_view to_string(Controller controller);
std::optional<Controller> parse_controller(std::string_view text);

struct TeamConfig {
  int id = kAllyTeam;
  Controller controller = Controller::external;
  std::optional<HeuristicParams> heuristic;

  bool operator==(const TeamConfig&) const = default;
};

struct UnitPlacement {
  int team = kAllyTeam;
  std::optional<std::string> preset;  // preset name the spec was derived from
  UnitSpec spec;
  Vec2 position;
  double heading_deg = 0.0;

  bool operator==(const UnitPlacement&) const = default;
};

struct ScenarioConfig {
  std::string name;
  FieldSpec field;
  PhysicsParams physics;
  int max_steps = 300;
  std::vector<TeamConfig> teams;
  std::vector<UnitPlacement> units;
  std::vector<Zone> zones;
  int max_units = 0;
  int max_zones = 0;

  const TeamConfig* team(int id) const;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Placement built from a preset (name or code) with the preset recorded.
UnitPlacement place_preset(std::string_view preset, int team, Vec2 position, double heading_deg);

/// Two-team config: allies external, enemies heuristic at the given tier.
std::vector<TeamConfig> default_teams(std::string_view enemy_tier = "medium");

enum class Winner : std::uint8_t { ally, enemy };
enum class OutcomeReason : std::uint8_t { elimination, truncation_health, truncation_tie };

std::string_view to_string(Winner winner);
std::string_view to_string(OutcomeReason reason);

struct Outcome {
  Winner winner = Winner::enemy;
  OutcomeReason reason = OutcomeReason::elimination;

  bool operator==(const Outcome&) const = default;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string path;
  std::string message;

  std::string str() const { return path + " " + message; }
  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  /// Informational only, e.g. defaults filled on load.
  std::vector<std::string> notes;

  bool ok() const { return violations.empty(); }
  std::string str() const;
};

ValidationReport validate_scenario(const ScenarioConfig& config);

/// Validation for zone-only catalog fragments: field and zones, no unit or team checks.
ValidationReport validate_zone_layout(const ScenarioConfig& config);

class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// ---------------------------------------------------------------------------
// Compositional scenario names, e.g. "2F1M2Avs2S1K_2L2B2S-1".

inline constexpr std::string_view kZoneCodes = "LBS";

using UnitCounts = std::array<int, kUnitCodes.size()>;
using ZoneCounts = std::array<int, kZoneCodes.size()>;

struct Composition {
  UnitCounts ally{};
  UnitCounts enemy{};
  ZoneCounts zones{};
  std::string variant;

  int count(int team, char code) const;
  int zone_count(char code) const;
  bool has_zones() const;

  bool operator==(const Composition&) const = default;
};

class CompositionParseError : public std::runtime_error {
 public:
  CompositionParseError(std::size_t offset, const std::string& what);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

Composition parse_composition_name(std::string_view name);
std::string format_composition_name(const Composition& composition);

/// Zone-only names such as "2L2B2S-1".
struct ZoneComposition {
  ZoneCounts zones{};
  std::string variant;

  bool operator==(const ZoneComposition&) const = default;
};

ZoneComposition parse_zone_composition(std::string_view name);
std::string format_zone_composition(const ZoneComposition& composition);

}  // namespace tabx
