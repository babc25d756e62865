#include <algorithm>
#include <cmath>

#include "tabx/perception.hpp"

namespace tabx {

namespace {

bool in_same_bush(std::span<const Zone> zones, Vec2 a, Vec2 b) {
  for (const Zone& z : zones) {
    if (z.type == ZoneType::bush && z.contains(a) && z.contains(b)) return true;
  }
  return false;
}

bool in_any_bush(std::span<const Zone> zones, Vec2 p) {
  for (const Zone& z : zones) {
    if (z.type == ZoneType::bush && z.contains(p)) return true;
  }
  return false;
}

// Scalars shared by own/other/global unit blocks.
struct UnitScalars {
  float health_ratio, max_health_scaled, cos_h, sin_h, range, damage, cooldown, cooldown_ratio, radius, mass,
      sight, alive, speed;
};

UnitScalars scalars(const UnitState& u) {
  const double cd_ratio = u.spec.attack_cooldown > 0.0 ? u.cooldown_timer / u.spec.attack_cooldown : 0.0;
  return {static_cast<float>(u.health / u.spec.max_health),
          static_cast<float>(u.spec.max_health / kHealthReference),
          static_cast<float>(std::cos(u.heading)),
          static_cast<float>(std::sin(u.heading)),
          static_cast<float>(u.spec.attack_range),
          static_cast<float>(u.spec.attack_damage),
          static_cast<float>(u.cooldown_timer),
          static_cast<float>(cd_ratio),
          static_cast<float>(u.spec.body_radius),
          static_cast<float>(u.spec.body_mass),
          static_cast<float>(u.spec.sight_angle),
          u.alive ? 1.0f : 0.0f,
          static_cast<float>(u.spec.speed)};
}

// 15 values: ratio, scaled max, pos(2), cos, sin, range, damage, cooldown, cooldown ratio,
// radius, mass, sight angle, alive, speed.
float* write_own_block(const UnitState& u, Vec2 pos, float* p) {
  const UnitScalars s = scalars(u);
  *p++ = s.health_ratio;
  *p++ = s.max_health_scaled;
  *p++ = static_cast<float>(pos.x);
  *p++ = static_cast<float>(pos.y);
  *p++ = s.cos_h;
  *p++ = s.sin_h;
  *p++ = s.range;
  *p++ = s.damage;
  *p++ = s.cooldown;
  *p++ = s.cooldown_ratio;
  *p++ = s.radius;
  *p++ = s.mass;
  *p++ = s.sight;
  *p++ = s.alive;
  *p++ = s.speed;
  return p;
}

// 8 values: one-hot type (3), center (2), semi-axes (2), effect.
float* write_zone_block(const Zone& z, Vec2 center, float* p) {
  if (z.type == ZoneType::inactive) {
    std::fill(p, p + ObservationLayout::per_zone_dim, 0.0f);
    return p + ObservationLayout::per_zone_dim;
  }
  *p++ = z.type == ZoneType::lava ? 1.0f : 0.0f;
  *p++ = z.type == ZoneType::bush ? 1.0f : 0.0f;
  *p++ = z.type == ZoneType::swamp ? 1.0f : 0.0f;
  *p++ = static_cast<float>(center.x);
  *p++ = static_cast<float>(center.y);
  *p++ = static_cast<float>(z.semi_axes.x);
  *p++ = static_cast<float>(z.semi_axes.y);
  *p++ = static_cast<float>(z.effect);
  return p;
}

Vec2 scale_by_extent(Vec2 v, const FieldSpec& field) { return {v.x / field.width, v.y / field.height}; }

}  // namespace

bool in_fov_cone(const UnitState& observer, Vec2 point) {
  const Vec2 d = point - observer.position;
  if (d.x == 0.0 && d.y == 0.0) return true;
  const Vec2 h = heading_vector(observer.heading);
  const double deviation = std::atan2(std::abs(h.cross(d)), h.dot(d));
  return deviation <= 0.5 * observer.spec.sight_angle;
}

bool in_fov(const UnitState& observer, Vec2 point) {
  const Vec2 d = point - observer.position;
  if (d.norm2() > observer.spec.sight_range * observer.spec.sight_range) return false;
  return in_fov_cone(observer, point);
}

BoolMatrix visibility_matrix(std::span<const UnitState> units, std::span<const Zone> zones) {
  const int n = static_cast<int>(units.size());
  BoolMatrix visible(n);
  std::vector<std::uint8_t> hidden_in_bush(n, 0);
  for (int j = 0; j < n; ++j) {
    hidden_in_bush[j] = units[j].active && units[j].reveal_timer == 0.0 && in_any_bush(zones, units[j].position);
  }
  for (int i = 0; i < n; ++i) {
    const UnitState& obs = units[i];
    if (!obs.active) continue;
    for (int j = 0; j < n; ++j) {
      const UnitState& tgt = units[j];
      if (!tgt.active) continue;
      if (i == j) {
        visible.set(i, j);
        continue;
      }
      if (!in_fov(obs, tgt.position)) continue;
      const bool concealed =
          hidden_in_bush[j] && obs.team != tgt.team && !in_same_bush(zones, obs.position, tgt.position);
      if (!concealed) visible.set(i, j);
    }
  }
  return visible;
}

void update_reveal_timers(std::span<UnitState> units, const BoolMatrix& interactions, double reveal_duration) {
  const int n = static_cast<int>(units.size());
  for (int k = 0; k < n; ++k) {
    if (interactions.row_any(k) || interactions.column_any(k)) units[k].reveal_timer = reveal_duration;
  }
}

void build_observation(int i, std::span<const UnitState> units, std::span<const Zone> zones,
                       const BoolMatrix& visibility, const BoolMatrix& attackable, const FieldSpec& field,
                       std::span<float> out) {
  std::fill(out.begin(), out.end(), 0.0f);
  const UnitState& self = units[i];
  if (!self.active) return;

  float* p = out.data();
  p = write_own_block(self, scale_by_extent(self.position, field), p);

  const int n = static_cast<int>(units.size());
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const UnitState& other = units[j];
    if (!other.active || !visibility(i, j)) {
      p += ObservationLayout::per_other_dim;
      continue;
    }
    const UnitScalars s = scalars(other);
    const Vec2 rel = scale_by_extent(other.position - self.position, field);
    *p++ = s.health_ratio;
    *p++ = s.max_health_scaled;
    *p++ = static_cast<float>(rel.x);
    *p++ = static_cast<float>(rel.y);
    *p++ = s.cos_h;
    *p++ = s.sin_h;
    *p++ = s.range;
    *p++ = s.damage;
    *p++ = s.cooldown;
    *p++ = s.cooldown_ratio;
    *p++ = s.radius;
    *p++ = s.mass;
    *p++ = s.sight;
    *p++ = s.alive;
    *p++ = other.team == self.team ? 1.0f : 0.0f;
    *p++ = attackable(i, j) ? 1.0f : 0.0f;
    *p++ = s.speed;
  }

  for (const Zone& z : zones) {
    p = write_zone_block(z, scale_by_extent(z.center - self.position, field), p);
  }
}

void build_global_state(std::span<const UnitState> units, std::span<const Zone> zones, const FieldSpec& field,
                        std::span<float> out) {
  std::fill(out.begin(), out.end(), 0.0f);
  float* p = out.data();
  for (const UnitState& u : units) {
    if (!u.active) {
      p += ObservationLayout::own_dim;
      continue;
    }
    p = write_own_block(u, scale_by_extent(u.position, field), p);
  }
  for (const Zone& z : zones) {
    p = write_zone_block(z, scale_by_extent(z.center, field), p);
  }
}

}  // namespace tabx
