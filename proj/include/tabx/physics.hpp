#pragma once

// Kinematic integration, circle-circle contacts, impulse resolution and the
// out-of-bounds penalty. All functions mutate unit state in place.

#include <span>
#include <vector>

#include "tabx/core.hpp"

namespace tabx {

struct Contact {
  int i = 0;  // i < j
  int j = 0;
  Vec2 normal;  // unit vector from i toward j
  double depth = 0.0;

  bool operator==(const Contact&) const = default;
};

/// Sets v = commanded + impulse carry, advances position by v*dt and runs
/// the cooldown/reveal timers down. Inactive slots are left untouched.
void integrate_kinematics(std::span<UnitState> units, std::span<const Vec2> commanded, double dt);

/// Contacts for every overlapping active pair, sorted by (i, j). Uses a
/// sweep along x for larger unit counts.
std::vector<Contact> detect_contacts(std::span<const UnitState> units);

/// All-pairs reference used as the test oracle for detect_contacts.
std::vector<Contact> detect_contacts_reference(std::span<const UnitState> units);

/// Single in-order pass over contacts: restitution impulse for approaching
/// pairs, then slop-thresholded positional correction. Kinematic bodies
/// have zero inverse mass and are never moved. The velocity change of each
/// unit is stored in impulse_carry for the next integration.
void resolve_contacts(std::span<UnitState> units, std::span<const Contact> contacts, const PhysicsParams& params);

/// Damages alive units whose center is outside the field by
/// coeff * max_health * dt, then clips every active unit into bounds.
void apply_boundary(std::span<UnitState> units, const FieldSpec& field, double boundary_damage_coeff, double dt);

}  // namespace tabx
