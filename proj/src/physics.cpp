#include <algorithm>
#include <numeric>

#include "tabx/physics.hpp"

namespace tabx {

namespace {

// Timers that land within this distance of zero after a decrement are
// snapped to zero so that n*dt cooldowns expire after exactly n steps.
constexpr double kTimerSnap = 1e-9;

constexpr std::size_t kSweepThreshold = 16;

double run_down(double timer, double dt) {
  const double t = timer - dt;
  return t <= kTimerSnap ? 0.0 : t;
}

double inverse_mass(const UnitState& u) { return u.spec.kinematic ? 0.0 : 1.0 / u.spec.body_mass; }

// Exact narrow-phase test shared by both detection paths so that they agree bit for bit.
bool make_contact(std::span<const UnitState> units, int i, int j, Contact& out) {
  const UnitState& a = units[i];
  const UnitState& b = units[j];
  const Vec2 delta = b.position - a.position;
  const double radii = a.spec.body_radius + b.spec.body_radius;
  const double dist2 = delta.norm2();
  if (dist2 >= radii * radii) return false;
  const double dist = std::sqrt(dist2);
  out.i = i;
  out.j = j;
  if (dist == 0.0) {
    out.normal = {1.0, 0.0};
    out.depth = radii;
  } else {
    out.normal = delta / dist;
    out.depth = radii - dist;
  }
  return true;
}

}  // namespace

void integrate_kinematics(std::span<UnitState> units, std::span<const Vec2> commanded, double dt) {
  for (std::size_t k = 0; k < units.size(); ++k) {
    UnitState& u = units[k];
    if (!u.active) continue;
    const Vec2 cmd = k < commanded.size() ? commanded[k] : Vec2{};
    u.velocity = cmd + u.impulse_carry;
    u.position += u.velocity * dt;
    u.cooldown_timer = run_down(u.cooldown_timer, dt);
    u.reveal_timer = run_down(u.reveal_timer, dt);
  }
}

std::vector<Contact> detect_contacts_reference(std::span<const UnitState> units) {
  std::vector<Contact> contacts;
  const int n = static_cast<int>(units.size());
  Contact c;
  for (int i = 0; i < n; ++i) {
    if (!units[i].active) continue;
    for (int j = i + 1; j < n; ++j) {
      if (units[j].active && make_contact(units, i, j, c)) contacts.push_back(c);
    }
  }
  return contacts;
}

std::vector<Contact> detect_contacts(std::span<const UnitState> units) {
  if (units.size() <= kSweepThreshold) return detect_contacts_reference(units);

  std::vector<int> order;
  order.reserve(units.size());
  for (int k = 0; k < static_cast<int>(units.size()); ++k) {
    if (units[k].active) order.push_back(k);
  }
  auto lo = [&](int k) { return units[k].position.x - units[k].spec.body_radius; };
  auto hi = [&](int k) { return units[k].position.x + units[k].spec.body_radius; };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lo(a) < lo(b) || (lo(a) == lo(b) && a < b); });

  std::vector<Contact> contacts;
  Contact c;
  for (std::size_t s = 0; s < order.size(); ++s) {
    const int a = order[s];
    const double reach = hi(a);
    for (std::size_t t = s + 1; t < order.size() && lo(order[t]) <= reach; ++t) {
      const int b = order[t];
      const int i = std::min(a, b);
      const int j = std::max(a, b);
      if (make_contact(units, i, j, c)) contacts.push_back(c);
    }
  }
  std::sort(contacts.begin(), contacts.end(),
            [](const Contact& x, const Contact& y) { return x.i < y.i || (x.i == y.i && x.j < y.j); });
  return contacts;
}

void resolve_contacts(std::span<UnitState> units, std::span<const Contact> contacts, const PhysicsParams& params) {
  std::vector<Vec2> before(units.size());
  for (std::size_t k = 0; k < units.size(); ++k) before[k] = units[k].velocity;

  for (const Contact& c : contacts) {
    UnitState& a = units[c.i];
    UnitState& b = units[c.j];
    const double inv_a = inverse_mass(a);
    const double inv_b = inverse_mass(b);
    const double inv_sum = inv_a + inv_b;
    if (inv_sum == 0.0) continue;

    const double closing = (b.velocity - a.velocity).dot(c.normal);
    if (closing <= 0.0) {
      const double jm = -(1.0 + params.restitution) * closing / inv_sum;
      a.velocity -= c.normal * (jm * inv_a);
      b.velocity += c.normal * (jm * inv_b);
    }

    const double correction = params.correction_percent * std::max(c.depth - params.penetration_slop, 0.0) / inv_sum;
    a.position -= c.normal * (correction * inv_a);
    b.position += c.normal * (correction * inv_b);
  }

  for (std::size_t k = 0; k < units.size(); ++k) {
    if (units[k].active) units[k].impulse_carry = units[k].velocity - before[k];
  }
}

void apply_boundary(std::span<UnitState> units, const FieldSpec& field, double boundary_damage_coeff, double dt) {
  for (UnitState& u : units) {
    if (!u.active || field.contains(u.position)) continue;
    if (u.alive) {
      u.health = std::max(0.0, u.health - boundary_damage_coeff * u.spec.max_health * dt);
    }
    u.position.x = std::clamp(u.position.x, 0.0, field.width);
    u.position.y = std::clamp(u.position.y, 0.0, field.height);
  }
}

}  // namespace tabx
