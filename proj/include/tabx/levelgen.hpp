#pragma once

// Uniform level sampling over free-parameter ranges and the three mutation
// operators (parameter perturbation, zone axis swap, zone retype).

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tabx/core.hpp"

namespace tabx {

struct Range {
  double min = 0.0;
  double max = 0.0;

  double width() const { return max - min; }
  bool operator==(const Range&) const = default;
};

struct UnitRanges {
  Range max_health{30.0, 120.0};
  Range speed{0.5, 1.5};
  Range attack_damage{5.0, 40.0};  // magnitude; healers keep their sign

  bool operator==(const UnitRanges&) const = default;
};

struct ZoneRanges {
  std::vector<ZoneType> types{ZoneType::lava, ZoneType::bush, ZoneType::swamp};
  Vec2 center_min{0.0, 0.0};
  Vec2 center_max{40.0, 40.0};
  Range semi_axes{1.0, 6.0};
  Range lava_effect{1.0, 10.0};
  Range swamp_effect{0.3, 0.9};

  Range effect(ZoneType type) const;
  bool operator==(const ZoneRanges&) const = default;
};

struct HeuristicRanges {
  Range epsilon{0.0, 1.0};
  Range aggressive_threshold{0.0, 0.7};

  bool operator==(const HeuristicRanges&) const = default;
};

struct LevelCategories {
  bool unit_spec = true;
  bool zones = true;
  bool heuristic = true;

  bool operator==(const LevelCategories&) const = default;
};

struct LevelGenSpec {
  ScenarioConfig base;
  UnitRanges unit_ranges;
  ZoneRanges zone_ranges;
  HeuristicRanges heuristic_ranges;
  LevelCategories categories;

  bool operator==(const LevelGenSpec&) const = default;
};

/// Ranges clipped to the type invariants and the base field, so every
/// sample validates. Throws std::invalid_argument when a range has min > max
/// or the zone type set is empty.
LevelGenSpec make_levelgen_spec(LevelGenSpec spec);

/// Default ranges around a base config, zone centers spanning its field.
LevelGenSpec default_levelgen_spec(const ScenarioConfig& base);

/// JSON form: {"base": <scenario document or catalog name>, "categories": [...],
/// "unit_ranges": {...}, "zone_ranges": {...}, "heuristic_ranges": {...}}.
LevelGenSpec levelgen_spec_from_json(const nlohmann::json& doc);

/// Uniform doubles and indices from a 64-bit Mersenne Twister, with the
/// conversion fixed here rather than left to std distributions.
class LevelRng {
 public:
  explicit LevelRng(std::uint64_t seed) : engine_(seed) {}
  double uniform();
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double uniform(Range r) { return uniform(r.min, r.max); }
  std::size_t below(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

/// Base config with each enabled category redrawn uniformly. Unit positions
/// and headings are kept. The zone count equals the base zone count.
ScenarioConfig sample_level(const LevelGenSpec& spec, LevelRng& rng);

enum class MutationKind { perturb, swap_axes, retype };
std::string_view to_string(MutationKind kind);
std::optional<MutationKind> parse_mutation_kind(std::string_view text);  // accepts swap-axes too

struct MutationOp {
  MutationKind kind = MutationKind::perturb;
  double delta = 0.1;  // perturb noise as a fraction of each range width
};

/// perturb adds U(-delta*width, +delta*width) to every continuous free
/// parameter of the enabled categories and clips to the invariant bounds.
/// swap_axes and retype pick one active zone uniformly; with no active zone
/// the config is returned unchanged.
ScenarioConfig mutate_level(const ScenarioConfig& config, const MutationOp& op, const LevelGenSpec& ranges,
                            LevelRng& rng);

}  // namespace tabx
