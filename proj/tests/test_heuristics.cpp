#include <doctest.h>

#include <map>

#include "helpers.hpp"
#include "oracle_values.hpp"
#include "tabx/actions.hpp"
#include "tabx/combat.hpp"
#include "tabx/environment.hpp"
#include "tabx/heuristics.hpp"
#include "tabx/perception.hpp"

using namespace tabx;
using testing::unit;

namespace {

struct Scene {
  std::vector<UnitState> units;
  std::vector<Zone> zones;
  PhysicsParams physics;
  FieldSpec field;
  BoolMatrix visibility;
  BoolMatrix attackable;

  HeuristicView view() {
    visibility = visibility_matrix(units, zones);
    attackable = attackable_matrix(units, visibility);
    return {units, zones, visibility, attackable, physics, field};
  }
};

std::vector<std::uint8_t> full_mask(bool attack = true) {
  std::vector<std::uint8_t> m = {1, 1, 1, 1, 1, static_cast<std::uint8_t>(attack), 0};
  return m;
}

HeuristicParams greedy(double xi = 0.0) {
  HeuristicParams p;
  p.epsilon = 0.0;
  p.aggressive_threshold = xi;
  return p;
}

int decide(Scene& s, int i, const HeuristicParams& p, std::uint64_t step = 0) {
  HeuristicMemory memory;
  const auto mask = full_mask(s.units[i].cooldown_timer == 0.0);
  return heuristic_step(i, s.view(), memory, p, mask, RandomDraw{{1, 0}, step, static_cast<std::uint64_t>(i)});
}

}  // namespace

TEST_CASE("classify_roles") {
  const auto tier = *heuristic_tier("medium");
  CHECK(classify_roles(preset_for_code('S'), tier) == RoleFlags{true, false, false});
  CHECK(classify_roles(preset_for_code('A'), tier) == RoleFlags{false, true, false});
  CHECK(classify_roles(preset_for_code('P'), tier) == RoleFlags{false, false, true});
  CHECK(classify_roles(preset_for_code('H'), tier) == RoleFlags{false, false, true});
  CHECK(classify_roles(preset_for_code('F'), tier) == RoleFlags{});
  CHECK(classify_roles(preset_for_code('C'), tier) == RoleFlags{false, true, false});
  auto fast_archer = preset_for_code('A');
  fast_archer.speed = 2.0;
  CHECK(classify_roles(fast_archer, tier) == RoleFlags{true, true, false});
}

TEST_CASE("select_heuristic_target") {
  const auto tier = *heuristic_tier("medium");
  SUBCASE("healer prefers the injured ally") {
    std::vector<UnitState> u = {unit('H', 0, {10, 10}), unit('F', 0, {15, 10}), unit('F', 0, {12, 10})};
    u[1].health = 30;
    const auto v = visibility_matrix(u, {});
    CHECK(select_heuristic_target(0, u, v, classify_roles(u[0].spec, tier)) == 1);
    u[1].health = 60;
    CHECK(select_heuristic_target(0, u, v, classify_roles(u[0].spec, tier)) == 2);
  }
  SUBCASE("assassin prefers the lowest max health") {
    std::vector<UnitState> u = {unit('S', 0, {10, 10}), unit('A', 1, {18, 10}), unit('K', 1, {12, 10})};
    const auto v = visibility_matrix(u, {});
    CHECK(select_heuristic_target(0, u, v, classify_roles(u[0].spec, tier)) == 1);
  }
  SUBCASE("nothing visible") {
    std::vector<UnitState> u = {unit('F', 0, {10, 10}, std::numbers::pi), unit('A', 1, {18, 10})};
    const auto v = visibility_matrix(u, {});
    CHECK_FALSE(select_heuristic_target(0, u, v, classify_roles(u[0].spec, tier)));
  }
  SUBCASE("healers pick allies and fighters pick enemies") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> pos(0.0, 30.0);
    std::uniform_int_distribution<int> code(0, 8);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<UnitState> u;
      for (int k = 0; k < 8; ++k) u.push_back(unit(kUnitCodes[code(rng)], k % 2, {pos(rng), pos(rng)}, pos(rng)));
      const auto v = visibility_matrix(u, {});
      for (int i = 0; i < 8; ++i) {
        const auto roles = classify_roles(u[i].spec, tier);
        if (auto t = select_heuristic_target(i, u, v, roles)) {
          CHECK(v(i, *t));
          CHECK((u[*t].team == u[i].team) == roles.healer);
        }
      }
    }
  }
}

TEST_CASE("desired_position") {
  auto target = unit('F', 1, {0, 0}, 0.0);
  const auto tier = *heuristic_tier("medium");
  auto assassin = unit('S', 0, {5, 5});
  const Vec2 behind = desired_position(assassin, target, classify_roles(assassin.spec, tier));
  CHECK(behind.x == doctest::Approx(oracle::kAssassinBehindX));
  CHECK(behind.y == doctest::Approx(0.0));
  auto healer = unit('H', 0, {0, 0});
  auto ally = unit('F', 0, {3, 4});
  CHECK(desired_position(healer, ally, classify_roles(healer.spec, tier)) == Vec2{3, 4});
  auto farmer = unit('F', 0, {5, 5});
  const Vec2 front = desired_position(farmer, target, classify_roles(farmer.spec, tier));
  CHECK(front.x == doctest::Approx(oracle::kFarmerFrontX));
  CHECK(front.y == doctest::Approx(0.0));
}

TEST_CASE("heuristic priority cascade") {
  SUBCASE("attack when the target is in the hurtbox") {
    Scene s;
    s.units = {unit('F', 0, {10, 10}, 0.0), unit('F', 1, {12, 10}, std::numbers::pi)};
    for (std::uint64_t step = 0; step < 50; ++step) CHECK(decide(s, 0, greedy(), step) == kAttack);
  }
  SUBCASE("rotate when one increment aligns the hurtbox") {
    Scene s;
    const Vec2 self{10, 10};
    s.units = {unit('F', 0, self, 0.0), unit('F', 1, self + heading_vector(deg_to_rad(58)) * 3.0, 0.0)};
    REQUIRE(in_fov(s.units[0], s.units[1].position));
    REQUIRE_FALSE(hurtbox_hit(s.units[0], s.units[1]));
    CHECK(decide(s, 0, greedy()) == kRotate);
  }
  SUBCASE("approach a visible target") {
    Scene s;
    s.units = {unit('F', 0, {10, 10}, 0.0), unit('F', 1, {20, 10}, std::numbers::pi)};
    CHECK(decide(s, 0, greedy()) == kMoveRight);
  }
  SUBCASE("search rotation when nothing is known") {
    Scene s;
    s.units = {unit('F', 0, {10, 10}, 0.0), unit('F', 1, {2, 30}, std::numbers::pi)};
    CHECK(decide(s, 0, greedy()) == kRotate);
  }
  SUBCASE("ranger heads for the nearest bush") {
    Scene s;
    s.units = {unit('A', 0, {10, 10}, std::numbers::pi), unit('F', 1, {35, 10}, 0.0)};
    s.zones = {{ZoneType::bush, {10, 30}, {3, 3}, 0}, {ZoneType::bush, {30, 35}, {3, 3}, 0}};
    CHECK(decide(s, 0, greedy()) == kMoveUp);
  }
  SUBCASE("memory pursuit") {
    Scene s;
    s.units = {unit('F', 0, {10, 10}, 0.0), unit('F', 1, {16, 10}, 0.0)};
    HeuristicMemory memory;
    auto mask = full_mask();
    heuristic_step(0, s.view(), memory, greedy(), mask, RandomDraw{});
    CHECK(memory.valid);
    CHECK(memory.last_seen_position == Vec2{16, 10});
    s.units[1].position = {16, 30};
    const auto view = s.view();
    REQUIRE_FALSE(view.visibility(0, 1));
    CHECK(heuristic_step(0, view, memory, greedy(), mask, RandomDraw{}) == kMoveRight);
  }
}

TEST_CASE("epsilon one gives uniform valid actions") {
  Scene s;
  s.units = {unit('F', 0, {10, 10}, 0.0), unit('F', 1, {12, 10}, std::numbers::pi)};
  auto view = s.view();
  auto p = *heuristic_tier("random");
  const auto mask = full_mask();
  std::map<int, int> counts;
  const int n = 10000;
  for (int step = 0; step < n; ++step) {
    HeuristicMemory memory;
    ++counts[heuristic_step(0, view, memory, p, mask, RandomDraw{{42, 0}, static_cast<std::uint64_t>(step), 0})];
  }
  CHECK(counts.size() == 6);
  CHECK(counts.count(kNoOp) == 0);
  double chi2 = 0.0;
  const double expected = n / 6.0;
  for (const auto& [a, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 5 degrees of freedom, p = 0.001.
  CHECK(chi2 < 20.515);
}

TEST_CASE("masked attack is never chosen") {
  Scene s;
  s.units = {unit('F', 0, {10, 10}, 0.0), unit('F', 1, {12, 10}, std::numbers::pi)};
  s.units[0].cooldown_timer = 1.0;
  auto view = s.view();
  const auto mask = full_mask(false);
  for (int step = 0; step < 2000; ++step) {
    HeuristicMemory memory;
    const int a = heuristic_step(0, view, memory, *heuristic_tier("novice"), mask,
                                 RandomDraw{{5, 0}, static_cast<std::uint64_t>(step), 0});
    CHECK(a != kAttack);
  }
}

TEST_CASE("kiting is monotone in the aggressive threshold") {
  const double xis[] = {0.0, 0.1, 0.3, 0.5, 0.7, 1.0};
  std::vector<std::vector<bool>> kites(std::size(xis));
  for (double d = 1.5; d < 20.0; d += 0.5) {
    for (double angle = -50.0; angle <= 50.0; angle += 10.0) {
      for (double cooldown : {0.0, 3.0}) {
        Scene s;
        const Vec2 self{20, 20};
        s.units = {unit('A', 0, self, 0.0),
                   unit('F', 1, self + heading_vector(deg_to_rad(angle)) * d, std::numbers::pi)};
        s.units[0].cooldown_timer = cooldown;
        const int baseline = decide(s, 0, greedy(0.0));
        for (std::size_t k = 0; k < std::size(xis); ++k) kites[k].push_back(decide(s, 0, greedy(xis[k])) != baseline);
      }
    }
  }
  for (std::size_t k = 0; k + 1 < std::size(xis); ++k) {
    std::size_t count = 0;
    for (std::size_t n = 0; n < kites[k].size(); ++n) {
      if (kites[k][n]) CHECK(kites[k + 1][n]);
      count += kites[k][n];
    }
    if (k == 0) CHECK(count == 0);
  }
  std::size_t expert = 0;
  for (bool b : kites[4]) expert += b;
  CHECK(expert > 0);
}
