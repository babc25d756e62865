#include <algorithm>
#include <limits>

#include "tabx/actions.hpp"
#include "tabx/combat.hpp"
#include "tabx/perception.hpp"

namespace tabx {

bool hurtbox_hit(const UnitState& attacker, const UnitState& target) {
  if (!target.active) return false;
  // Target center in the attacker's local frame: x along heading, y to the left.
  const Vec2 h = heading_vector(attacker.heading);
  const Vec2 d = target.position - attacker.position;
  const double lx = d.dot(h);
  const double ly = h.cross(d);
  const double half_width = attacker.spec.body_radius;
  const double cx = std::clamp(lx, 0.0, attacker.spec.attack_range);
  const double cy = std::clamp(ly, -half_width, half_width);
  const double gap2 = (lx - cx) * (lx - cx) + (ly - cy) * (ly - cy);
  const double r = target.spec.body_radius;
  if (gap2 > r * r) return false;
  return in_fov_cone(attacker, target.position);
}

std::vector<bool> hurtbox_hits(int attacker, std::span<const UnitState> units) {
  std::vector<bool> hits(units.size(), false);
  for (std::size_t j = 0; j < units.size(); ++j) {
    if (static_cast<int>(j) != attacker) hits[j] = hurtbox_hit(units[attacker], units[j]);
  }
  return hits;
}

BoolMatrix attackable_matrix(std::span<const UnitState> units, const BoolMatrix& visibility) {
  const int n = static_cast<int>(units.size());
  BoolMatrix attackable(n);
  for (int i = 0; i < n; ++i) {
    const UnitState& a = units[i];
    if (!a.alive || a.spec.attack_damage == 0.0) continue;
    const bool heals = a.spec.attack_damage < 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const UnitState& t = units[j];
      if (!t.alive || !visibility(i, j)) continue;
      if (heals != (a.team == t.team)) continue;
      if (hurtbox_hit(a, t)) attackable.set(i, j);
    }
  }
  return attackable;
}

std::optional<int> select_target(int i, const BoolMatrix& attackable, std::span<const UnitState> units) {
  std::optional<int> best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (int j = 0; j < attackable.size(); ++j) {
    if (!attackable(i, j)) continue;
    const double d2 = (units[j].position - units[i].position).norm2();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = j;
    }
  }
  return best;
}

InteractionMatrix resolve_combat(std::span<UnitState> units, std::span<const int> actions,
                                 const BoolMatrix& attackable) {
  const int n = static_cast<int>(units.size());
  InteractionMatrix attacked(n);
  std::vector<double> delta(n, 0.0);
  for (int i = 0; i < n; ++i) {
    UnitState& a = units[i];
    if (!a.alive || i >= static_cast<int>(actions.size()) || actions[i] != kAttack) continue;
    if (a.cooldown_timer > 0.0) continue;
    if (auto j = select_target(i, attackable, units)) {
      attacked.set(i, *j);
      delta[*j] -= a.spec.attack_damage;
    }
    a.cooldown_timer = a.spec.attack_cooldown;
  }
  for (int j = 0; j < n; ++j) {
    if (delta[j] != 0.0) {
      units[j].health = std::clamp(units[j].health + delta[j], 0.0, units[j].spec.max_health);
    }
  }
  return attacked;
}

}  // namespace tabx
