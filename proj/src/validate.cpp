#include <cmath>
#include <numbers>
#include <sstream>

#include "tabx/core.hpp"

namespace tabx {

namespace {

class Checker {
 public:
  explicit Checker(ValidationReport& report) : report_(report) {}

  void require(bool ok, std::string path, std::string message) {
    if (!ok) report_.violations.push_back({std::move(path), std::move(message)});
  }

 private:
  ValidationReport& report_;
};

std::string indexed(std::string_view base, std::size_t i) {
  return std::string(base) + "[" + std::to_string(i) + "]";
}

bool finite(double v) { return std::isfinite(v); }

void check_field(Checker& c, const FieldSpec& f) {
  c.require(finite(f.width) && f.width > 0.0, "field.width", "must be > 0");
  c.require(finite(f.height) && f.height > 0.0, "field.height", "must be > 0");
  c.require(finite(f.margin) && f.margin >= 0.0, "field.margin", "must be >= 0");
}

void check_zones(Checker& c, const ScenarioConfig& config) {
  for (std::size_t k = 0; k < config.zones.size(); ++k) {
    const Zone& z = config.zones[k];
    const std::string p = indexed("zones", k);
    c.require(finite(z.center.x) && finite(z.center.y), p + ".center", "must be finite");
    if (z.type == ZoneType::inactive) continue;
    c.require(finite(z.semi_axes.x) && finite(z.semi_axes.y) && z.semi_axes.x > 0.0 && z.semi_axes.y > 0.0,
              p + ".semi_axes", "must be > 0");
    c.require(finite(z.effect), p + ".effect", "must be finite");
    if (z.type == ZoneType::swamp) {
      c.require(z.effect <= 1.0, p + ".effect", "> 1 for swamp");
      c.require(z.effect > 0.0, p + ".effect", "<= 0 for swamp");
    } else if (z.type == ZoneType::lava) {
      c.require(z.effect >= 0.0, p + ".effect", "< 0 for lava");
    }
  }
  c.require(config.max_zones >= 0, "max_zones", "must be >= 0");
  c.require(static_cast<int>(config.zones.size()) <= config.max_zones, "zones",
            "count exceeds max_zones");
}

void check_spec(Checker& c, const UnitSpec& s, const std::string& p) {
  c.require(finite(s.max_health) && s.max_health > 0.0, p + ".max_health", "must be > 0");
  c.require(finite(s.body_radius) && s.body_radius > 0.0, p + ".body_radius", "must be > 0");
  c.require(finite(s.body_mass) && s.body_mass > 0.0, p + ".body_mass", "must be > 0");
  c.require(finite(s.speed) && s.speed >= 0.0, p + ".speed", "must be >= 0");
  c.require(finite(s.attack_damage), p + ".attack_damage", "must be finite");
  c.require(finite(s.attack_range) && s.attack_range >= 0.0, p + ".attack_range", "must be >= 0");
  c.require(finite(s.attack_cooldown) && s.attack_cooldown >= 0.0, p + ".attack_cooldown", "must be >= 0");
  c.require(finite(s.sight_angle) && s.sight_angle > 0.0 && s.sight_angle <= 2.0 * std::numbers::pi,
            p + ".sight_angle", "must be in (0, 2pi]");
  c.require(finite(s.sight_range) && s.sight_range > 0.0, p + ".sight_range", "must be > 0");
  c.require(s.space_occupied >= 1, p + ".space_occupied", "must be >= 1");
}

void check_heuristic(Checker& c, const HeuristicParams& h, const std::string& p) {
  auto unit_interval = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
  c.require(unit_interval(h.epsilon), p + ".epsilon", "must be in [0, 1]");
  c.require(unit_interval(h.aggressive_threshold), p + ".aggressive_threshold", "must be in [0, 1]");
  c.require(finite(h.assassin_speed_threshold) && h.assassin_speed_threshold >= 0.0,
            p + ".assassin_speed_threshold", "must be >= 0");
  c.require(finite(h.ranger_range_threshold) && h.ranger_range_threshold >= 0.0,
            p + ".ranger_range_threshold", "must be >= 0");
}

}  // namespace

std::string ValidationReport::str() const {
  std::ostringstream out;
  for (const auto& v : violations) out << v.str() << "\n";
  return out.str();
}

ScenarioError::ScenarioError(ValidationReport report)
    : std::runtime_error("invalid scenario:\n" + report.str()), report_(std::move(report)) {}

ValidationReport validate_zone_layout(const ScenarioConfig& config) {
  ValidationReport report;
  Checker c(report);
  check_field(c, config.field);
  check_zones(c, config);
  return report;
}

ValidationReport validate_scenario(const ScenarioConfig& config) {
  ValidationReport report;
  Checker c(report);
  check_field(c, config.field);

  const PhysicsParams& ph = config.physics;
  c.require(finite(ph.dt) && ph.dt > 0.0, "physics.dt", "must be > 0");
  c.require(finite(ph.restitution) && ph.restitution >= 0.0 && ph.restitution <= 1.0,
            "physics.restitution", "must be in [0, 1]");
  c.require(finite(ph.penetration_slop) && ph.penetration_slop >= 0.0, "physics.penetration_slop",
            "must be >= 0");
  c.require(finite(ph.correction_percent) && ph.correction_percent > 0.0 && ph.correction_percent <= 1.0,
            "physics.correction_percent", "must be in (0, 1]");
  c.require(finite(ph.rotation_step_deg), "physics.rotation_step_deg", "must be finite");
  c.require(finite(ph.boundary_damage_coeff) && ph.boundary_damage_coeff >= 0.0,
            "physics.boundary_damage_coeff", "must be >= 0");
  c.require(finite(ph.reveal_duration) && ph.reveal_duration >= 0.0, "physics.reveal_duration",
            "must be >= 0");
  c.require(config.max_steps > 0, "max_steps", "must be > 0");

  c.require(config.teams.size() == 2, "teams", "must contain exactly two teams");
  bool has_ally = false;
  bool has_enemy = false;
  for (std::size_t k = 0; k < config.teams.size(); ++k) {
    const TeamConfig& t = config.teams[k];
    const std::string p = indexed("teams", k);
    c.require(t.id == kAllyTeam || t.id == kEnemyTeam, p + ".id", "must be 0 or 1");
    if (t.id == kAllyTeam) {
      c.require(!has_ally, p + ".id", "duplicate team id");
      has_ally = true;
    }
    if (t.id == kEnemyTeam) {
      c.require(!has_enemy, p + ".id", "duplicate team id");
      has_enemy = true;
    }
    if (t.controller == Controller::heuristic) {
      c.require(t.heuristic.has_value(), p + ".heuristic", "required for heuristic controller");
    }
    if (t.heuristic) check_heuristic(c, *t.heuristic, p + ".heuristic");
  }

  int per_team[2] = {0, 0};
  for (std::size_t k = 0; k < config.units.size(); ++k) {
    const UnitPlacement& u = config.units[k];
    const std::string p = indexed("units", k);
    const bool team_ok = u.team == kAllyTeam || u.team == kEnemyTeam;
    c.require(team_ok, p + ".team", "must be 0 or 1");
    if (team_ok) ++per_team[u.team];
    check_spec(c, u.spec, p + ".spec");
    c.require(finite(u.position.x) && finite(u.position.y) && config.field.contains(u.position),
              p + ".position", "outside field");
    c.require(finite(u.heading_deg), p + ".heading_deg", "must be finite");
  }
  c.require(per_team[kAllyTeam] > 0, "units", "team 0 has no units");
  c.require(per_team[kEnemyTeam] > 0, "units", "team 1 has no units");
  c.require(static_cast<int>(config.units.size()) <= config.max_units, "units", "count exceeds max_units");

  check_zones(c, config);
  return report;
}

}  // namespace tabx
