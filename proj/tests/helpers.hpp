#pragma once

#include <random>
#include <vector>

#include "tabx/core.hpp"

namespace testing {

inline tabx::UnitState unit(const tabx::UnitSpec& spec, int team, tabx::Vec2 position, double heading = 0.0) {
  tabx::UnitState u;
  u.spec = spec;
  u.team = team;
  u.position = position;
  u.heading = heading;
  u.health = spec.max_health;
  u.alive = true;
  u.active = true;
  return u;
}

inline tabx::UnitState unit(char code, int team, tabx::Vec2 position, double heading = 0.0) {
  return unit(tabx::preset_for_code(code), team, position, heading);
}

inline tabx::UnitSpec plain_spec(double radius = 1.0, double mass = 1.0) {
  tabx::UnitSpec s;
  s.body_radius = radius;
  s.body_mass = mass;
  return s;
}

/// Allies external, enemies at the given tier, no zones.
inline tabx::ScenarioConfig two_team(std::vector<tabx::UnitPlacement> units, std::string_view tier = "medium") {
  tabx::ScenarioConfig c;
  c.name = "test";
  c.teams = tabx::default_teams(tier);
  c.units = std::move(units);
  c.max_units = static_cast<int>(c.units.size());
  return c;
}

/// Random overlapping crowd inside a 40x40 box.
inline std::vector<tabx::UnitState> random_crowd(std::mt19937_64& rng, int n, double box = 40.0) {
  std::uniform_real_distribution<double> pos(0.0, box);
  std::uniform_real_distribution<double> radius(0.3, 4.5);
  std::uniform_real_distribution<double> mass(0.5, 50.0);
  std::uniform_real_distribution<double> vel(-2.0, 2.0);
  std::bernoulli_distribution coin(0.1);
  std::vector<tabx::UnitState> units;
  for (int k = 0; k < n; ++k) {
    auto u = unit(plain_spec(radius(rng), mass(rng)), k % 2, {pos(rng), pos(rng)});
    u.velocity = {vel(rng), vel(rng)};
    u.active = !coin(rng);
    if (coin(rng)) {
      u.health = 0.0;
      u.alive = false;
    }
    units.push_back(u);
  }
  return units;
}

}  // namespace testing

#include "tabx/environment.hpp"

namespace testing {

/// Uniform valid action per slot from the current mask.
inline tabx::JointAction random_joint_action(const tabx::StepResult& env, std::mt19937_64& rng) {
  const int n = static_cast<int>(env.state.units.size());
  tabx::JointAction actions(n, tabx::kNoOp);
  for (int k = 0; k < n; ++k) {
    const auto row = env.mask_row(k);
    std::vector<int> valid;
    for (int a = 0; a < tabx::kNumActions; ++a)
      if (row[a]) valid.push_back(a);
    if (!valid.empty()) actions[k] = valid[std::uniform_int_distribution<std::size_t>(0, valid.size() - 1)(rng)];
  }
  return actions;
}

/// Both teams driven from outside.
inline tabx::ScenarioConfig external_both(tabx::ScenarioConfig c) {
  for (auto& t : c.teams) {
    t.controller = tabx::Controller::external;
  }
  return c;
}

}  // namespace testing
