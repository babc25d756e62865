#include <algorithm>
#include <cmath>

#include "tabx/catalog.hpp"
#include "tabx/levelgen.hpp"
#include "tabx/scenario_io.hpp"

namespace tabx {

using nlohmann::json;

namespace {

constexpr double kMinHealth = 1e-3;
constexpr double kMinSemiAxis = 0.1;
constexpr double kMinSwampEffect = 0.01;

void check_range(const Range& r, const char* what) {
  if (!(r.min <= r.max) || !std::isfinite(r.min) || !std::isfinite(r.max)) {
    throw std::invalid_argument(std::string(what) + ": need finite min <= max");
  }
}

Range clip(Range r, double lo, double hi) {
  r.min = std::clamp(r.min, lo, hi);
  r.max = std::clamp(r.max, lo, hi);
  return r;
}

// Clamp to [lo, hi], widened to include the original value so that an
// already-valid value is never moved by the clip alone.
double clip_around(double value, double original, double lo, double hi) {
  return std::clamp(value, std::min(lo, original), std::max(hi, original));
}

double noise(LevelRng& rng, double delta, double width) {
  const double half = delta * width;
  return rng.uniform(-half, half);
}

Range range_from_json(const json& v, const char* what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw std::invalid_argument(std::string(what) + ": expected [min, max]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

Vec2 vec2_from_json(const json& v, const char* what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw std::invalid_argument(std::string(what) + ": expected [x, y]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

template <typename Fn>
void each_key(const json& obj, const char* what, Fn&& fn) {
  if (!obj.is_object()) throw std::invalid_argument(std::string(what) + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) fn(it.key(), it.value());
}

}  // namespace

Range ZoneRanges::effect(ZoneType type) const {
  switch (type) {
    case ZoneType::lava: return lava_effect;
    case ZoneType::swamp: return swamp_effect;
    default: return {0.0, 0.0};
  }
}

double LevelRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t LevelRng::below(std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
}

LevelGenSpec make_levelgen_spec(LevelGenSpec spec) {
  UnitRanges& u = spec.unit_ranges;
  ZoneRanges& z = spec.zone_ranges;
  HeuristicRanges& h = spec.heuristic_ranges;
  check_range(u.max_health, "unit_ranges.max_health");
  check_range(u.speed, "unit_ranges.speed");
  check_range(u.attack_damage, "unit_ranges.attack_damage");
  check_range(z.semi_axes, "zone_ranges.semi_axes");
  check_range(z.lava_effect, "zone_ranges.effect.lava");
  check_range(z.swamp_effect, "zone_ranges.effect.swamp");
  check_range({z.center_min.x, z.center_max.x}, "zone_ranges.center x");
  check_range({z.center_min.y, z.center_max.y}, "zone_ranges.center y");
  check_range(h.epsilon, "heuristic_ranges.epsilon");
  check_range(h.aggressive_threshold, "heuristic_ranges.aggressive_threshold");
  if (z.types.empty()) throw std::invalid_argument("zone_ranges.types: empty");
  for (ZoneType t : z.types) {
    if (t == ZoneType::inactive) throw std::invalid_argument("zone_ranges.types: inactive is not samplable");
  }

  constexpr double inf = std::numeric_limits<double>::infinity();
  u.max_health = clip(u.max_health, kMinHealth, inf);
  u.speed = clip(u.speed, 0.0, inf);
  u.attack_damage = clip(u.attack_damage, 0.0, inf);
  z.semi_axes = clip(z.semi_axes, kMinSemiAxis, inf);
  z.lava_effect = clip(z.lava_effect, 0.0, inf);
  z.swamp_effect = clip(z.swamp_effect, kMinSwampEffect, 1.0);
  const FieldSpec& f = spec.base.field;
  z.center_min = {std::clamp(z.center_min.x, 0.0, f.width), std::clamp(z.center_min.y, 0.0, f.height)};
  z.center_max = {std::clamp(z.center_max.x, 0.0, f.width), std::clamp(z.center_max.y, 0.0, f.height)};
  h.epsilon = clip(h.epsilon, 0.0, 1.0);
  h.aggressive_threshold = clip(h.aggressive_threshold, 0.0, 1.0);
  return spec;
}

LevelGenSpec default_levelgen_spec(const ScenarioConfig& base) {
  LevelGenSpec spec;
  spec.base = base;
  spec.zone_ranges.center_min = {0.0, 0.0};
  spec.zone_ranges.center_max = base.field.extent();
  return make_levelgen_spec(spec);
}

LevelGenSpec levelgen_spec_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("level spec: expected an object");
  auto base_it = doc.find("base");
  if (base_it == doc.end()) throw std::invalid_argument("level spec: missing base");
  ScenarioConfig base = base_it->is_string() ? scenario_by_name(base_it->get<std::string>())
                                             : scenario_from_json(*base_it).config;
  LevelGenSpec spec = default_levelgen_spec(base);

  if (auto it = doc.find("categories"); it != doc.end()) {
    if (!it->is_array()) throw std::invalid_argument("categories: expected an array");
    spec.categories = {false, false, false};
    for (const auto& c : *it) {
      const std::string name = c.is_string() ? c.get<std::string>() : "";
      if (name == "unit_spec") spec.categories.unit_spec = true;
      else if (name == "zones") spec.categories.zones = true;
      else if (name == "heuristic") spec.categories.heuristic = true;
      else throw std::invalid_argument("categories: unknown category '" + name + "'");
    }
  }
  if (auto it = doc.find("unit_ranges"); it != doc.end()) {
    each_key(*it, "unit_ranges", [&](const std::string& key, const json& v) {
      if (key == "max_health") spec.unit_ranges.max_health = range_from_json(v, "unit_ranges.max_health");
      else if (key == "speed") spec.unit_ranges.speed = range_from_json(v, "unit_ranges.speed");
      else if (key == "attack_damage") spec.unit_ranges.attack_damage = range_from_json(v, "unit_ranges.attack_damage");
      else throw std::invalid_argument("unit_ranges: unknown key '" + key + "'");
    });
  }
  if (auto it = doc.find("zone_ranges"); it != doc.end()) {
    each_key(*it, "zone_ranges", [&](const std::string& key, const json& v) {
      ZoneRanges& z = spec.zone_ranges;
      if (key == "types") {
        if (!v.is_array()) throw std::invalid_argument("zone_ranges.types: expected an array");
        z.types.clear();
        for (const auto& t : v) {
          auto type = t.is_string() ? parse_zone_type(t.get<std::string>()) : std::nullopt;
          if (!type) throw std::invalid_argument("zone_ranges.types: unknown type " + t.dump());
          z.types.push_back(*type);
        }
      } else if (key == "center_min") {
        z.center_min = vec2_from_json(v, "zone_ranges.center_min");
      } else if (key == "center_max") {
        z.center_max = vec2_from_json(v, "zone_ranges.center_max");
      } else if (key == "semi_axes") {
        z.semi_axes = range_from_json(v, "zone_ranges.semi_axes");
      } else if (key == "effect") {
        each_key(v, "zone_ranges.effect", [&](const std::string& type, const json& r) {
          if (type == "lava") z.lava_effect = range_from_json(r, "zone_ranges.effect.lava");
          else if (type == "swamp") z.swamp_effect = range_from_json(r, "zone_ranges.effect.swamp");
          else throw std::invalid_argument("zone_ranges.effect: unknown type '" + type + "'");
        });
      } else {
        throw std::invalid_argument("zone_ranges: unknown key '" + key + "'");
      }
    });
  }
  if (auto it = doc.find("heuristic_ranges"); it != doc.end()) {
    each_key(*it, "heuristic_ranges", [&](const std::string& key, const json& v) {
      if (key == "epsilon") spec.heuristic_ranges.epsilon = range_from_json(v, "heuristic_ranges.epsilon");
      else if (key == "aggressive_threshold")
        spec.heuristic_ranges.aggressive_threshold = range_from_json(v, "heuristic_ranges.aggressive_threshold");
      else throw std::invalid_argument("heuristic_ranges: unknown key '" + key + "'");
    });
  }
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    static const std::array<std::string_view, 5> known = {"base", "categories", "unit_ranges", "zone_ranges",
                                                          "heuristic_ranges"};
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      throw std::invalid_argument("level spec: unknown key '" + it.key() + "'");
    }
  }
  return make_levelgen_spec(spec);
}

ScenarioConfig sample_level(const LevelGenSpec& spec, LevelRng& rng) {
  ScenarioConfig c = spec.base;
  if (spec.categories.unit_spec) {
    const UnitRanges& r = spec.unit_ranges;
    for (UnitPlacement& u : c.units) {
      const double sign = u.spec.attack_damage < 0.0 ? -1.0 : 1.0;
      u.spec.max_health = rng.uniform(r.max_health);
      u.spec.speed = rng.uniform(r.speed);
      u.spec.attack_damage = sign * rng.uniform(r.attack_damage);
    }
  }
  if (spec.categories.zones) {
    const ZoneRanges& r = spec.zone_ranges;
    for (Zone& z : c.zones) {
      z.type = r.types[rng.below(r.types.size())];
      z.center = {rng.uniform(r.center_min.x, r.center_max.x), rng.uniform(r.center_min.y, r.center_max.y)};
      z.semi_axes = {rng.uniform(r.semi_axes), rng.uniform(r.semi_axes)};
      z.effect = rng.uniform(r.effect(z.type));
    }
  }
  if (spec.categories.heuristic) {
    for (TeamConfig& t : c.teams) {
      if (!t.heuristic) continue;
      t.heuristic->epsilon = rng.uniform(spec.heuristic_ranges.epsilon);
      t.heuristic->aggressive_threshold = rng.uniform(spec.heuristic_ranges.aggressive_threshold);
    }
  }
  return c;
}

std::string_view to_string(MutationKind kind) {
  switch (kind) {
    case MutationKind::perturb: return "perturb";
    case MutationKind::swap_axes: return "swap_axes";
    case MutationKind::retype: return "retype";
  }
  return "perturb";
}

std::optional<MutationKind> parse_mutation_kind(std::string_view text) {
  if (text == "perturb") return MutationKind::perturb;
  if (text == "swap_axes" || text == "swap-axes") return MutationKind::swap_axes;
  if (text == "retype") return MutationKind::retype;
  return std::nullopt;
}

ScenarioConfig mutate_level(const ScenarioConfig& config, const MutationOp& op, const LevelGenSpec& ranges,
                            LevelRng& rng) {
  if (!(op.delta >= 0.0 && op.delta <= 1.0)) throw std::invalid_argument("mutation delta must lie in [0, 1]");
  ScenarioConfig c = config;
  constexpr double inf = std::numeric_limits<double>::infinity();

  if (op.kind == MutationKind::perturb) {
    const double d = op.delta;
    if (ranges.categories.unit_spec) {
      const UnitRanges& r = ranges.unit_ranges;
      for (UnitPlacement& u : c.units) {
        UnitSpec& s = u.spec;
        s.max_health = clip_around(s.max_health + noise(rng, d, r.max_health.width()), s.max_health, kMinHealth, inf);
        s.speed = clip_around(s.speed + noise(rng, d, r.speed.width()), s.speed, 0.0, inf);
        const double sign = s.attack_damage < 0.0 ? -1.0 : 1.0;
        const double magnitude = std::abs(s.attack_damage);
        s.attack_damage =
            sign * clip_around(magnitude + noise(rng, d, r.attack_damage.width()), magnitude, 0.0, inf);
      }
    }
    if (ranges.categories.zones) {
      const ZoneRanges& r = ranges.zone_ranges;
      const FieldSpec& f = c.field;
      for (Zone& z : c.zones) {
        if (z.type == ZoneType::inactive) continue;
        const Vec2 c0 = z.center;
        z.center.x = clip_around(c0.x + noise(rng, d, r.center_max.x - r.center_min.x), c0.x, 0.0, f.width);
        z.center.y = clip_around(c0.y + noise(rng, d, r.center_max.y - r.center_min.y), c0.y, 0.0, f.height);
        const Vec2 a0 = z.semi_axes;
        z.semi_axes.x = clip_around(a0.x + noise(rng, d, r.semi_axes.width()), a0.x, kMinSemiAxis, inf);
        z.semi_axes.y = clip_around(a0.y + noise(rng, d, r.semi_axes.width()), a0.y, kMinSemiAxis, inf);
        const double e0 = z.effect;
        if (z.type == ZoneType::lava) {
          z.effect = clip_around(e0 + noise(rng, d, r.lava_effect.width()), e0, 0.0, inf);
        } else if (z.type == ZoneType::swamp) {
          z.effect = clip_around(e0 + noise(rng, d, r.swamp_effect.width()), e0, kMinSwampEffect, 1.0);
        }
      }
    }
    if (ranges.categories.heuristic) {
      const HeuristicRanges& r = ranges.heuristic_ranges;
      for (TeamConfig& t : c.teams) {
        if (!t.heuristic) continue;
        HeuristicParams& h = *t.heuristic;
        h.epsilon = clip_around(h.epsilon + noise(rng, d, r.epsilon.width()), h.epsilon, 0.0, 1.0);
        h.aggressive_threshold = clip_around(h.aggressive_threshold + noise(rng, d, r.aggressive_threshold.width()),
                                             h.aggressive_threshold, 0.0, 1.0);
      }
    }
    return c;
  }

  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < c.zones.size(); ++k) {
    if (c.zones[k].type != ZoneType::inactive) active.push_back(k);
  }
  if (active.empty()) return c;
  Zone& z = c.zones[active[rng.below(active.size())]];
  if (op.kind == MutationKind::swap_axes) {
    std::swap(z.semi_axes.x, z.semi_axes.y);
  } else {
    static constexpr std::array<ZoneType, 3> kTypes = {ZoneType::lava, ZoneType::bush, ZoneType::swamp};
    z.type = kTypes[rng.below(kTypes.size())];
    z.effect = rng.uniform(ranges.zone_ranges.effect(z.type));
  }
  return c;
}

}  // namespace tabx
