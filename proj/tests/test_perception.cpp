#include <doctest.h>

#include <random>

#include "bush_cases.hpp"
#include "helpers.hpp"
#include "oracle_values.hpp"
#include "tabx/combat.hpp"
#include "tabx/perception.hpp"

using namespace tabx;
using testing::unit;

TEST_CASE("in_fov") {
  const auto obs = unit('F', 0, {0, 0}, 0.0);
  CHECK(in_fov(obs, {5, 0}));
  CHECK_FALSE(in_fov(obs, {-5, 0}));
  CHECK(in_fov(obs, {oracle::kFovInsideX, oracle::kFovInsideY}));
  CHECK_FALSE(in_fov(obs, {oracle::kFovOutsideX, oracle::kFovOutsideY}));
  CHECK(in_fov(obs, {0, 0}));
  CHECK(in_fov(obs, {20, 0}));
  CHECK_FALSE(in_fov(obs, {20.01, 0}));
  auto wide = obs;
  wide.spec.sight_angle = 2 * std::numbers::pi;
  CHECK(in_fov(wide, {-5, 0}));
}

TEST_CASE("bush truth table") {
  for (const auto& c : testing::bush_cases()) {
    CAPTURE(c.label);
    CHECK(testing::evaluate_bush_case(c) == c.expected_visible);
  }
}

TEST_CASE("visibility matrix basics") {
  std::vector<UnitState> units = {unit('F', 0, {10, 10}, 0.0), unit('F', 1, {15, 10}, 0.0),
                                  unit('F', 1, {12, 10}, 0.0)};
  units[2].active = false;
  const auto v = visibility_matrix(units, {});
  CHECK(v(0, 0));
  CHECK(v(1, 1));
  CHECK(v(0, 1));
  CHECK_FALSE(v(1, 0));
  CHECK_FALSE(v(2, 2));
  CHECK_FALSE(v(0, 2));
  CHECK_FALSE(v(2, 0));
}

TEST_CASE("teammates in the FoV are visible under any bush layout") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pos(0.0, 40.0);
  std::uniform_real_distribution<double> axis(0.5, 8.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Zone> zones;
    for (int k = 0; k < 4; ++k) zones.push_back({ZoneType::bush, {pos(rng), pos(rng)}, {axis(rng), axis(rng)}, 0});
    std::vector<UnitState> units;
    for (int k = 0; k < 8; ++k) units.push_back(unit('F', k % 2, {pos(rng), pos(rng)}, pos(rng)));
    const auto v = visibility_matrix(units, zones);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        if (units[i].team == units[j].team) CHECK(v(i, j) == in_fov(units[i], units[j].position));
  }
}

TEST_CASE("reveal timers") {
  std::vector<UnitState> units = {unit('F', 0, {0, 0}), unit('F', 1, {1, 0}), unit('H', 1, {3, 0}),
                                  unit('F', 1, {5, 0})};
  BoolMatrix hits(4);
  update_reveal_timers(units, hits, 1.0);
  for (const auto& u : units) CHECK(u.reveal_timer == 0.0);
  hits.set(0, 1);
  hits.set(2, 3);
  update_reveal_timers(units, hits, 1.0);
  for (const auto& u : units) CHECK(u.reveal_timer == 1.0);
}

TEST_CASE("observation layout") {
  ObservationLayout layout{5, 2};
  CHECK(layout.total() == oracle::kObsDim5x2);
  CHECK(layout.global_total() == oracle::kGlobalDim5x2);

  std::vector<UnitState> units = {unit('F', 0, {10, 20}, 0.0), unit('A', 1, {15, 20}, std::numbers::pi),
                                  unit('S', 0, {5, 20}, 0.0), unit('F', 1, {30, 30}), UnitState{}};
  std::vector<Zone> zones = {{ZoneType::lava, {20, 20}, {3, 2}, 5}, {}};
  const FieldSpec field;
  auto vis = visibility_matrix(units, zones);
  const auto att = attackable_matrix(units, vis);
  std::vector<float> obs(layout.total());
  build_observation(0, units, zones, vis, att, field, obs);

  SUBCASE("own block of a full-health farmer") {
    CHECK(obs[0] == 1.0f);
    CHECK(obs[1] == doctest::Approx(60.0 / kHealthReference));
    CHECK(obs[2] == doctest::Approx(0.25));
    CHECK(obs[3] == doctest::Approx(0.5));
    CHECK(obs[4] == 1.0f);
    CHECK(obs[5] == 0.0f);
    CHECK(obs[6] == 2.5f);
    CHECK(obs[7] == 14.0f);
    CHECK(obs[13] == 1.0f);
    CHECK(obs[14] == 1.1f);
  }
  SUBCASE("visible enemy block") {
    const float* b = obs.data() + 15;
    CHECK(b[0] == 1.0f);
    CHECK(b[2] == doctest::Approx(5.0 / 40.0));
    CHECK(b[3] == 0.0f);
    CHECK(b[14] == 0.0f);  // team flag: other team
    CHECK(b[15] == 0.0f);  // not in hurtbox
  }
  SUBCASE("unit behind the observer is zeroed") {
    for (int k = 0; k < 17; ++k) CHECK(obs[15 + 17 + k] == 0.0f);
  }
  SUBCASE("zone blocks") {
    const float* z = obs.data() + 15 + 4 * 17;
    CHECK(z[0] == 1.0f);
    CHECK(z[1] == 0.0f);
    CHECK(z[3] == doctest::Approx(0.25));
    CHECK(z[5] == 3.0f);
    CHECK(z[7] == 5.0f);
    for (int k = 8; k < 16; ++k) CHECK(z[k] == 0.0f);
  }
  SUBCASE("flipping one unit to invisible zeroes only its block") {
    auto hidden = vis;
    hidden.set(0, 1, false);
    std::vector<float> obs2(layout.total());
    build_observation(0, units, zones, hidden, att, field, obs2);
    for (int k = 0; k < layout.total(); ++k) {
      const bool in_block = k >= 15 && k < 32;
      if (in_block) {
        CHECK(obs2[k] == 0.0f);
      } else {
        CHECK(obs2[k] == obs[k]);
      }
    }
  }
  SUBCASE("all others invisible") {
    BoolMatrix self_only(5);
    self_only.set(0, 0);
    build_observation(0, units, zones, self_only, att, field, obs);
    for (int k = 15; k < 15 + 4 * 17; ++k) CHECK(obs[k] == 0.0f);
  }
  SUBCASE("global state is the unmasked own blocks") {
    std::vector<float> global(layout.global_total());
    build_global_state(units, zones, field, global);
    BoolMatrix none(5);
    for (int i = 0; i < 4; ++i) {
      std::vector<float> own(layout.total());
      build_observation(i, units, zones, none, att, field, own);
      for (int k = 0; k < 15; ++k) CHECK(global[i * 15 + k] == own[k]);
    }
    for (int k = 60; k < 75; ++k) CHECK(global[k] == 0.0f);
    CHECK(global[75] == 1.0f);
    CHECK(global[78] == doctest::Approx(0.5));
  }
}
