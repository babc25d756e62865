#include <algorithm>
#include <cctype>
#include <cmath>

#include "tabx/core.hpp"

namespace tabx {

namespace {

UnitSpec make_preset(std::string name, double health, double radius, double mass, double speed,
                     double damage, double range, double cooldown, int space) {
  UnitSpec s;
  s.name = std::move(name);
  s.max_health = health;
  s.body_radius = radius;
  s.body_mass = mass;
  s.speed = speed;
  s.attack_damage = damage;
  s.attack_range = range;
  s.attack_cooldown = cooldown;
  s.space_occupied = space;
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

double wrap_angle(double radians) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(radians, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

const std::vector<UnitSpec>& unit_presets() {
  // Order matches kUnitCodes.
  static const std::vector<UnitSpec> presets = {
      make_preset("farmer", 60, 1.0, 1.0, 1.1, 14, 2.5, 2.5, 1),
      make_preset("assassin", 70, 1.0, 1.0, 1.4, 22, 2.5, 1.5, 1),
      make_preset("theking", 346, 1.47, 10.0, 1.2, 46, 3.2, 2.5, 1),
      make_preset("mammoth", 685, 4.25, 50.0, 1.2, 20, 3.0, 6.5, 4),
      make_preset("archer", 40, 1.0, 1.0, 1.0, 28, 27.0, 8.0, 1),
      make_preset("cannon", 100, 1.0, 5.2, 0.5, 80, 40.0, 10.0, 1),
      make_preset("deadeye", 40, 1.0, 1.0, 1.1, 25, 20.0, 8.0, 1),
      make_preset("healer", 25, 1.0, 1.0, 1.0, -7, 10.0, 2.0, 1),
      make_preset("paladin", 220, 1.32, 8.5, 1.2, -6, 7.5, 2.0, 1),
  };
  return presets;
}

std::optional<UnitSpec> find_preset(std::string_view name_or_code) {
  const auto& presets = unit_presets();
  if (name_or_code.size() == 1) {
    auto pos = kUnitCodes.find(static_cast<char>(std::toupper(static_cast<unsigned char>(name_or_code[0]))));
    if (pos != std::string_view::npos) return presets[pos];
    return std::nullopt;
  }
  for (const auto& p : presets) {
    if (iequals(p.name, name_or_code)) return p;
  }
  return std::nullopt;
}

const UnitSpec& preset_for_code(char code) {
  auto pos = kUnitCodes.find(code);
  if (pos == std::string_view::npos) throw std::invalid_argument(std::string("unknown unit code ") + code);
  return unit_presets()[pos];
}

std::string_view to_string(ZoneType type) {
  switch (type) {
    case ZoneType::lava: return "lava";
    case ZoneType::bush: return "bush";
    case ZoneType::swamp: return "swamp";
    case ZoneType::inactive: return "inactive";
  }
  return "inactive";
}

std::optional<ZoneType> parse_zone_type(std::string_view text) {
  for (auto t : {ZoneType::lava, ZoneType::bush, ZoneType::swamp, ZoneType::inactive}) {
    if (to_string(t) == text) return t;
  }
  return std::nullopt;
}

bool Zone::contains(Vec2 p) const {
  if (type == ZoneType::inactive) return false;
  const double dx = (p.x - center.x) / semi_axes.x;
  const double dy = (p.y - center.y) / semi_axes.y;
  return dx * dx + dy * dy <= 1.0;
}

double swamp_multiplier(std::span<const Zone> zones, Vec2 p) {
  double m = 1.0;
  for (const Zone& z : zones) {
    if (z.type == ZoneType::swamp && z.contains(p)) m *= z.effect;
  }
  return m;
}

double lava_rate(std::span<const Zone> zones, Vec2 p) {
  double rate = 0.0;
  for (const Zone& z : zones) {
    if (z.type == ZoneType::lava && z.contains(p)) rate += z.effect;
  }
  return rate;
}

std::optional<HeuristicParams> heuristic_tier(std::string_view name) {
  static constexpr std::array<std::array<double, 2>, 5> rows = {{
      {1.0, 0.0},
      {0.5, 0.1},
      {0.2, 0.3},
      {0.1, 0.5},
      {0.01, 0.7},
  }};
  for (std::size_t k = 0; k < kHeuristicTiers.size(); ++k) {
    if (iequals(kHeuristicTiers[k], name)) {
      HeuristicParams p;
      p.epsilon = rows[k][0];
      p.aggressive_threshold = rows[k][1];
      return p;
    }
  }
  return std::nullopt;
}

std::string_view to_string(Controller controller) {
  switch (controller) {
    case Controller::external: return "external";
    case Controller::heuristic: return "heuristic";
    case Controller::random: return "random";
  }
  return "external";
}

std::optional<Controller> parse_controller(std::string_view text) {
  for (auto c : {Controller::external, Controller::heuristic, Controller::random}) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

const TeamConfig* ScenarioConfig::team(int id) const {
  for (const auto& t : teams) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

UnitPlacement place_preset(std::string_view preset, int team, Vec2 position, double heading_deg) {
  auto spec = find_preset(preset);
  if (!spec) throw std::invalid_argument("unknown unit preset '" + std::string(preset) + "'");
  UnitPlacement u;
  u.team = team;
  u.preset = spec->name;
  u.spec = *spec;
  u.position = position;
  u.heading_deg = heading_deg;
  return u;
}

std::vector<TeamConfig> default_teams(std::string_view enemy_tier) {
  auto params = heuristic_tier(enemy_tier);
  if (!params) throw std::invalid_argument("unknown heuristic tier '" + std::string(enemy_tier) + "'");
  return {TeamConfig{kAllyTeam, Controller::external, std::nullopt},
          TeamConfig{kEnemyTeam, Controller::heuristic, params}};
}

std::string_view to_string(Winner winner) { return winner == Winner::ally ? "ally" : "enemy"; }

std::string_view to_string(OutcomeReason reason) {
  switch (reason) {
    case OutcomeReason::elimination: return "elimination";
    case OutcomeReason::truncation_health: return "truncation_health";
    case OutcomeReason::truncation_tie: return "truncation_tie";
  }
  return "elimination";
}

}  // namespace tabx
