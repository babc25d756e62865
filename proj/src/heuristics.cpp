#include <algorithm>
#include <limits>

#include "tabx/actions.hpp"
#include "tabx/combat.hpp"
#include "tabx/heuristics.hpp"

namespace tabx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool valid(std::span<const std::uint8_t> mask, int action) {
  return action >= 0 && action < static_cast<int>(mask.size()) && mask[action] != 0;
}

// One-step lookahead over the four world-frame moves. Moves that would leave
// the field are skipped when any in-field move exists. Ties keep the lowest id.
int greedy_move(const UnitState& self, Vec2 goal, double step_len, bool maximize, const FieldSpec& field,
                std::span<const std::uint8_t> mask) {
  int best = -1;
  bool best_inside = false;
  double best_score = 0.0;
  for (int a = kMoveUp; a <= kMoveLeft; ++a) {
    if (!valid(mask, a)) continue;
    const Vec2 next = self.position + move_direction(a) * step_len;
    const bool inside = field.contains(next);
    const double d2 = (goal - next).norm2();
    const double score = maximize ? -d2 : d2;
    if (best < 0 || (inside && !best_inside) || (inside == best_inside && score < best_score)) {
      best = a;
      best_inside = inside;
      best_score = score;
    }
  }
  return best;
}

std::optional<int> nearest_visible_enemy(int i, std::span<const UnitState> units, const BoolMatrix& visibility) {
  std::optional<int> best;
  double best_d2 = kInf;
  for (int j = 0; j < static_cast<int>(units.size()); ++j) {
    if (j == i || !units[j].alive || units[j].team == units[i].team || !visibility(i, j)) continue;
    const double d2 = (units[j].position - units[i].position).norm2();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = j;
    }
  }
  return best;
}

const Zone* nearest_bush(std::span<const Zone> zones, Vec2 p) {
  const Zone* best = nullptr;
  double best_d2 = kInf;
  for (const Zone& z : zones) {
    if (z.type != ZoneType::bush) continue;
    const double d2 = (z.center - p).norm2();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = &z;
    }
  }
  return best;
}

bool inside_bush(std::span<const Zone> zones, Vec2 p) {
  return std::any_of(zones.begin(), zones.end(),
                     [&](const Zone& z) { return z.type == ZoneType::bush && z.contains(p); });
}

int decide(int i, const HeuristicView& view, HeuristicMemory& memory, const HeuristicParams& params,
           RoleFlags roles, std::optional<int> target, std::span<const std::uint8_t> mask) {
  const UnitState& self = view.units[i];
  const double step_len = self.spec.speed * swamp_multiplier(view.zones, self.position) * view.physics.dt;
  const bool can_move = step_len > 0.0;
  const bool target_in_hurtbox = target && hurtbox_hit(self, view.units[*target]);

  if (target && view.attackable(i, *target) && self.cooldown_timer == 0.0 && valid(mask, kAttack)) {
    return kAttack;
  }

  if (target && !target_in_hurtbox && valid(mask, kRotate)) {
    UnitState turned = self;
    turned.heading = wrap_angle(self.heading + view.physics.rotation_step());
    if (hurtbox_hit(turned, view.units[*target])) return kRotate;
  }

  if (roles.ranger && can_move && params.aggressive_threshold > 0.0 && self.cooldown_timer > 0.0) {
    if (auto threat = nearest_visible_enemy(i, view.units, view.visibility)) {
      const double d = distance(self.position, view.units[*threat].position);
      if (d < params.aggressive_threshold * self.spec.attack_range) {
        const int a = greedy_move(self, view.units[*threat].position, step_len, true, view.field, mask);
        if (a >= 0) return a;
      }
    }
  }

  if (target) {
    const UnitState& t = view.units[*target];
    const Vec2 goal = desired_position(self, t, roles);
    const double gap = distance(self.position, goal);
    bool arrived = !can_move || gap <= step_len;
    if (roles.healer) {
      arrived = arrived || distance(self.position, t.position) <=
                               self.spec.body_radius + t.spec.body_radius + kStandoffMargin;
    }
    if (arrived && !target_in_hurtbox && valid(mask, kRotate)) return kRotate;
    if (can_move) {
      const int a = greedy_move(self, goal, step_len, false, view.field, mask);
      if (a >= 0) return a;
    }
  }

  if (memory.valid) {
    const double reach = self.spec.body_radius + memory.last_seen_radius + kStandoffMargin;
    if (!can_move || distance(self.position, memory.last_seen_position) <= reach) {
      memory.valid = false;
    } else {
      const int a = greedy_move(self, memory.last_seen_position, step_len, false, view.field, mask);
      if (a >= 0) return a;
    }
  }

  if (roles.ranger && can_move && !inside_bush(view.zones, self.position)) {
    if (const Zone* bush = nearest_bush(view.zones, self.position)) {
      const int a = greedy_move(self, bush->center, step_len, false, view.field, mask);
      if (a >= 0) return a;
    }
  }

  return kRotate;
}

}  // namespace

RoleFlags classify_roles(const UnitSpec& spec, const HeuristicParams& params) {
  RoleFlags r;
  r.assassin = spec.speed >= params.assassin_speed_threshold;
  r.ranger = spec.attack_range >= params.ranger_range_threshold && spec.attack_damage > 0.0;
  r.healer = spec.attack_damage < 0.0;
  return r;
}

std::optional<int> select_heuristic_target(int i, std::span<const UnitState> units, const BoolMatrix& visibility,
                                           RoleFlags roles) {
  const UnitState& self = units[i];
  const int n = static_cast<int>(units.size());
  std::optional<int> best;

  if (roles.healer) {
    // Injured allies first, then any ally; nearest wins within a tier.
    int best_tier = 2;
    double best_d2 = kInf;
    for (int j = 0; j < n; ++j) {
      const UnitState& u = units[j];
      if (j == i || !u.alive || u.team != self.team || !visibility(i, j)) continue;
      const int tier = u.health < u.spec.max_health ? 0 : 1;
      const double d2 = (u.position - self.position).norm2();
      if (tier < best_tier || (tier == best_tier && d2 < best_d2)) {
        best_tier = tier;
        best_d2 = d2;
        best = j;
      }
    }
    return best;
  }

  double best_key = kInf;
  double best_d2 = kInf;
  for (int j = 0; j < n; ++j) {
    const UnitState& u = units[j];
    if (j == i || !u.alive || u.team == self.team || !visibility(i, j)) continue;
    const double key = roles.assassin ? u.spec.max_health : 0.0;
    const double d2 = (u.position - self.position).norm2();
    if (key < best_key || (key == best_key && d2 < best_d2)) {
      best_key = key;
      best_d2 = d2;
      best = j;
    }
  }
  return best;
}

Vec2 desired_position(const UnitState& self, const UnitState& target, RoleFlags roles) {
  const Vec2 facing = heading_vector(target.heading);
  const double contact = self.spec.body_radius + target.spec.body_radius;
  if (roles.assassin) return target.position - facing * (contact + kStandoffMargin);
  if (roles.healer) return target.position;
  const double standoff =
      std::max(contact, std::min(0.8 * self.spec.attack_range, 0.8 * self.spec.sight_range));
  return target.position + facing * standoff;
}

int uniform_valid_action(std::span<const std::uint8_t> valid_actions, const RandomDraw& draw, RandomTag tag) {
  int count = 0;
  for (auto v : valid_actions) count += v != 0;
  if (count == 0) return kNoOp;
  auto pick = static_cast<int>(draw.below(static_cast<std::uint64_t>(count), tag));
  for (int a = 0; a < static_cast<int>(valid_actions.size()); ++a) {
    if (valid_actions[a] && pick-- == 0) return a;
  }
  return kNoOp;
}

int heuristic_step(int i, const HeuristicView& view, HeuristicMemory& memory, const HeuristicParams& params,
                   std::span<const std::uint8_t> valid_actions, const RandomDraw& draw) {
  const UnitState& self = view.units[i];
  if (!self.alive) return kNoOp;

  const RoleFlags roles = classify_roles(self.spec, params);
  const auto target = select_heuristic_target(i, view.units, view.visibility, roles);
  if (target) {
    memory.last_seen_position = view.units[*target].position;
    memory.last_seen_radius = view.units[*target].spec.body_radius;
    memory.valid = true;
  }

  int action = decide(i, view, memory, params, roles, target, valid_actions);
  if (!valid(valid_actions, action)) action = valid(valid_actions, kRotate) ? kRotate : kNoOp;

  if (params.epsilon > 0.0 && draw.uniform(RandomTag::heuristic_override) < params.epsilon) {
    action = uniform_valid_action(valid_actions, draw, RandomTag::heuristic_override_action);
  }
  return action;
}

}  // namespace tabx
