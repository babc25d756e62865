// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bush_cases.hpp"
#include "helpers.hpp"
#include "tabx/catalog.hpp"
#include "tabx/levelgen.hpp"
#include "tabx/physics.hpp"
#include "tabx/rollout.hpp"
#include "tabx/scenario_io.hpp"
#include "tabx/throughput.hpp"

using namespace tabx;

namespace {

using Clock = std::chrono::steady_clock;

enum class Status { pass, fail, not_evaluated };

int failures = 0;

void report(Status status, const std::string& name, const std::string& detail, double seconds) {
  const char* label = status == Status::pass ? "PASS" : status == Status::fail ? "FAIL" : "NOT EVALUATED";
  if (status == Status::fail) ++failures;
  std::printf("%s %s: %s (%.1fs)\n", label, name.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
}

void run(const std::string& name, const std::function<std::pair<Status, std::string>()>& body) {
  const auto start = Clock::now();
  std::pair<Status, std::string> result;
  try {
    result = body();
  } catch (const std::exception& e) {
    result = {Status::fail, std::string("exception: ") + e.what()};
  }
  report(result.first, name, result.second,
         std::chrono::duration<double>(Clock::now() - start).count());
}

Status pass_if(bool ok) { return ok ? Status::pass : Status::fail; }

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::vector<std::string> challenge_names() {
  std::vector<std::string> names;
  for (const auto& [name, entry] : catalog())
    if (entry.kind == CatalogKind::challenge) names.push_back(name);
  return names;
}

double terminal_bonus(const StepResult& r) {
  if (!r.info.outcome) return 0.0;
  return r.info.outcome->winner == Winner::ally ? 1.0 : -1.0;
}

std::pair<Status, std::string> telescoping() {
  const auto names = challenge_names();
  std::mt19937_64 rng(1);
  double worst = 0.0;
  int episodes = 0;
  for (const auto& name : names) {
    const auto config = apply_policies(scenario_by_name(name), parse_policy("random"), parse_policy("random"));
    for (int e = 0; e < 100; ++e) {
      auto r = reset(config, 17, e);
      const double start = r.state.prev_health_gap;
      double dense = 0.0;
      const JointAction ignored(r.state.units.size(), kNoOp);
      while (!r.state.done) {
        step_in_place(r, ignored);
        dense += r.reward - terminal_bonus(r);
      }
      worst = std::max(worst, std::abs(dense - (health_gap(r.state.units) - start)));
      ++episodes;
    }
  }
  return {pass_if(episodes == 1000 && worst < 1e-6),
          fmt("%d episodes over %zu challenges, max |dense - gap delta| = %.3g", episodes, names.size(), worst)};
}

std::string trace_text(const ScenarioConfig& c, const PolicySpec& ally, const PolicySpec& enemy, int episodes,
                       std::uint64_t seed, int threads, int batch) {
  std::ostringstream out;
  RolloutOptions o;
  o.threads = threads;
  o.batch_size = batch;
  o.trace = &out;
  run_rollouts(c, ally, enemy, episodes, seed, o);
  return out.str();
}

std::pair<Status, std::string> trace_determinism() {
  const auto c = scenario_by_name("2F1M2Avs2S1K_2L2B2S");
  const int episodes = 64;
  const auto enemy = parse_policy("heuristic:expert");
  const std::string source = trace_text(c, parse_policy("random"), enemy, episodes, 3, 1, 1);
  const auto dir = std::filesystem::temp_directory_path() / "tabx_acceptance";
  std::filesystem::create_directories(dir);
  const auto script = dir / "script.jsonl";
  write_text_file(script, source);
  const auto ally = parse_policy("replay:" + script.string());

  std::string reference;
  int runs = 0;
  int mismatches = 0;
  for (int repeat = 0; repeat < 2; ++repeat) {
    for (int threads : {1, 8}) {
      for (int batch : {1, 64}) {
        const auto text = trace_text(c, ally, enemy, episodes, 3, threads, batch);
        if (reference.empty()) reference = text;
        if (text != reference) ++mismatches;
        ++runs;
      }
    }
  }
  const bool replay_matches = reference == source;
  return {pass_if(mismatches == 0 && replay_matches && !reference.empty()),
          fmt("%d runs x %d episodes, %zu bytes, %d mismatches, replay %s", runs, episodes, reference.size(),
              mismatches, replay_matches ? "matches source" : "differs from source")};
}

std::pair<Status, std::string> physics_oracle() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit_interval(0.0, 1.0);
  std::uniform_real_distribution<double> mass(0.1, 60.0);
  std::uniform_real_distribution<double> vel(-3.0, 3.0);
  double worst_momentum = 0.0;
  double worst_energy_gain = -INFINITY;
  for (int trial = 0; trial < 100000; ++trial) {
    PhysicsParams params;
    params.restitution = unit_interval(rng);
    params.correction_percent = 0.01 + 0.99 * unit_interval(rng);
    params.penetration_slop = 0.05 * unit_interval(rng);
    const double r1 = 0.3 + 2 * unit_interval(rng);
    const double r2 = 0.3 + 2 * unit_interval(rng);
    const double angle = 2 * std::numbers::pi * unit_interval(rng);
    const double dist = (r1 + r2) * (0.01 + 0.98 * unit_interval(rng));
    std::vector<UnitState> u = {testing::unit(testing::plain_spec(r1, mass(rng)), 0, {20, 20}),
                                testing::unit(testing::plain_spec(r2, mass(rng)), 1,
                                              Vec2{20, 20} + heading_vector(angle) * dist)};
    u[0].velocity = {vel(rng), vel(rng)};
    u[1].velocity = {vel(rng), vel(rng)};
    auto p = [&] { return u[0].velocity * u[0].spec.body_mass + u[1].velocity * u[1].spec.body_mass; };
    auto k = [&] {
      return 0.5 * u[0].spec.body_mass * u[0].velocity.norm2() + 0.5 * u[1].spec.body_mass * u[1].velocity.norm2();
    };
    const Vec2 p0 = p();
    const double k0 = k();
    resolve_contacts(u, detect_contacts(u), params);
    const Vec2 p1 = p();
    worst_momentum = std::max({worst_momentum, std::abs(p1.x - p0.x), std::abs(p1.y - p0.y)});
    worst_energy_gain = std::max(worst_energy_gain, k() - k0);
  }

  PhysicsParams elastic;
  elastic.restitution = 1.0;
  std::vector<UnitState> pair = {testing::unit(testing::plain_spec(), 0, {0, 0}),
                                 testing::unit(testing::plain_spec(), 1, {1.5, 0})};
  pair[0].velocity = {1, 0};
  pair[1].velocity = {-1, 0};
  resolve_contacts(pair, detect_contacts(pair), elastic);
  const double exchange_error = std::max({std::abs(pair[0].velocity.x + 1), std::abs(pair[1].velocity.x - 1),
                                          std::abs(pair[0].velocity.y), std::abs(pair[1].velocity.y)});

  int sweep_mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto units = testing::random_crowd(rng, 32, 20.0);
    if (detect_contacts(units) != detect_contacts_reference(units)) ++sweep_mismatches;
  }
  const bool ok = worst_momentum < 1e-9 && worst_energy_gain <= 1e-9 && exchange_error < 1e-9 && sweep_mismatches == 0;
  return {pass_if(ok), fmt("100000 contacts: max momentum error %.3g, max energy change %.3g; elastic exchange error "
                           "%.3g; sweep vs all-pairs mismatches %d/1000",
                           worst_momentum, worst_energy_gain, exchange_error, sweep_mismatches)};
}

std::pair<Status, std::string> boundary_penalty() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> health(1.0, 500.0);
  std::uniform_real_distribution<double> dt(0.01, 0.5);
  std::uniform_real_distribution<double> outside(-5.0, -0.01);
  FieldSpec field;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    auto spec = testing::plain_spec();
    spec.max_health = health(rng);
    const double step = dt(rng);
    auto u = testing::unit(spec, trial % 2, {outside(rng), 20});
    std::vector<UnitState> units = {u};
    apply_boundary(units, field, 0.1, step);
    const double loss = u.health - units[0].health;
    worst = std::max(worst, std::abs(loss - 0.1 * spec.max_health * step) / spec.max_health);
  }
  return {pass_if(worst <= 1e-12), fmt("100 (h_max, dt) pairs, max relative error %.3g", worst)};
}

std::pair<Status, std::string> bush_table() {
  int wrong = 0;
  std::string which;
  const auto cases = testing::bush_cases();
  for (const auto& c : cases) {
    if (testing::evaluate_bush_case(c) != c.expected_visible) {
      ++wrong;
      which += std::string(" [") + c.label + "]";
    }
  }
  return {pass_if(wrong == 0), fmt("%zu cases, %d wrong%s", cases.size(), wrong, which.c_str())};
}

std::pair<Status, std::string> mask_soundness() {
  const auto names = challenge_names();
  std::vector<ScenarioConfig> configs;
  for (std::size_t k = 0; k < names.size(); ++k) {
    const char* enemy = k % 2 ? "random" : "heuristic:novice";
    auto c = apply_policies(scenario_by_name(names[k]), parse_policy("random"), parse_policy(enemy));
    c.teams[0].controller = Controller::external;
    configs.push_back(std::move(c));
  }
  std::mt19937_64 rng(4);
  std::bernoulli_distribution probe(0.02);
  const long long target_steps = 1000000;
  long long steps = 0;
  long long violations = 0;
  long long attacks = 0;
  long long probes = 0;
  long long unrejected = 0;
  std::uint64_t episode = 0;
  while (steps < target_steps) {
    auto r = reset(configs[episode % configs.size()], 5, episode);
    ++episode;
    while (!r.state.done && steps < target_steps) {
      const int n = static_cast<int>(r.state.units.size());
      std::vector<double> before(n);
      for (int k = 0; k < n; ++k) before[k] = r.state.units[k].cooldown_timer;
      auto actions = testing::random_joint_action(r, rng);
      if (probe(rng)) {
        for (int k = 0; k < n; ++k) {
          const auto& u = r.state.units[k];
          if (!u.active || !u.alive || u.team != kAllyTeam || r.mask_row(k)[kAttack]) continue;
          auto bad = actions;
          bad[k] = kAttack;
          ++probes;
          try {
            (void)step(r.state, bad);
            ++unrejected;
          } catch (const ActionError&) {
          }
          break;
        }
      }
      step_in_place(r, actions);
      ++steps;
      for (int k = 0; k < n; ++k) {
        const auto& u = r.state.units[k];
        if (!u.active) continue;
        const bool attacked = r.executed_actions[k] == kAttack;
        if (attacked) ++attacks;
        if (before[k] > 0.0 && (attacked || u.cooldown_timer > before[k])) ++violations;
      }
    }
  }
  return {pass_if(violations == 0 && unrejected == 0),
          fmt("%lld steps, %lld attack actions, %lld attacks with cooldown > 0; %lld masked probes, %lld accepted",
              steps, attacks, violations, probes, unrejected)};
}

double win_rate(const ScenarioConfig& c, const std::string& ally, const std::string& enemy) {
  return run_rollouts(c, parse_policy(ally), parse_policy(enemy), 500, 11).win_rate;
}

std::pair<Status, std::string> tier_ordering() {
  const auto c = scenario_by_name("1F1S1Avs1F1S1A");
  const auto start = Clock::now();
  const double medium_random = win_rate(c, "heuristic:medium", "random");
  const double expert_novice = win_rate(c, "heuristic:expert", "heuristic:novice");
  const char* tiers[] = {"random", "heuristic:novice", "heuristic:medium", "heuristic:advanced", "heuristic:expert"};
  std::vector<double> shares;
  for (int k = 0; k + 1 < 5; ++k) {
    const double upper_as_ally = win_rate(c, tiers[k + 1], tiers[k]);
    const double lower_as_ally = win_rate(c, tiers[k], tiers[k + 1]);
    shares.push_back((upper_as_ally + 1.0 - lower_as_ally) / 2.0);
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  const bool anchors = medium_random >= 0.80 && std::abs(medium_random - 0.95) <= 0.05 && expert_novice >= 0.70 &&
                       std::abs(expert_novice - 0.95) <= 0.05;
  const bool monotone = shares[0] > 0.5 && shares[1] > 0.5 && shares[2] > 0.5 && shares[3] >= 0.45;
  const bool fast = seconds < 300.0;
  return {pass_if(anchors && monotone && fast),
          fmt("medium vs random %.3f, expert vs novice %.3f; side-balanced shares novice/random %.3f, "
              "medium/novice %.3f, advanced/medium %.3f, expert/advanced %.3f; 5000 episodes in %.1fs",
              medium_random, expert_novice, shares[0], shares[1], shares[2], shares[3], seconds)};
}

std::pair<Status, std::string> throughput_scaling() {
  const unsigned cores = std::thread::hardware_concurrency();
  const auto c = scenario_by_name("2F1M2Avs2S1K_2L2B2S");
  const int counts[] = {64, 1024};
  const auto rows = benchmark_throughput(c, counts, 40);
  const double ratio = rows[1].env_steps_per_sec / rows[0].env_steps_per_sec;
  const std::string detail = fmt("%u cores; %.0f env steps/s at 64, %.0f at 1024, ratio %.2f (needs >= 8)", cores,
                                 rows[0].env_steps_per_sec, rows[1].env_steps_per_sec, ratio);
  if (cores < 16) return {Status::not_evaluated, detail + "; requires >= 16 cores"};
  return {pass_if(ratio >= 8.0), detail};
}

std::pair<Status, std::string> reset_latency() {
  std::vector<ScenarioConfig> configs;
  LevelRng rng(6);
  const char* bases[] = {"2F1M2Avs2S1K_2L2B2S", "crossfire", "superking", "encirclement", "ribbon"};
  for (const char* name : bases) {
    const auto spec = default_levelgen_spec(scenario_by_name(name));
    for (int k = 0; k < 20; ++k) configs.push_back(sample_level(spec, rng));
  }
  const auto latency = measure_reset_latency(configs, 1);
  return {pass_if(latency.max_ms < 10.0),
          fmt("%zu sampled scenarios, max %.3f ms, mean %.3f ms", configs.size(), latency.max_ms, latency.mean_ms)};
}

std::pair<Status, std::string> generator_validity() {
  LevelRng rng(7);
  const char* bases[] = {"2F1M2Avs2S1K_2L2B2S", "crossfire", "ambush", "grid", "1F1S1Avs1F1S1A_2L2B2S-2"};
  int sampled_invalid = 0;
  int mutated_invalid = 0;
  int sampled = 0;
  int mutated = 0;
  for (const char* name : bases) {
    const auto spec = default_levelgen_spec(scenario_by_name(name));
    ScenarioConfig level = spec.base;
    for (int k = 0; k < 2000; ++k) {
      const auto s = sample_level(spec, rng);
      ++sampled;
      if (!validate_scenario(s).ok()) ++sampled_invalid;
      level = mutate_level(k % 50 == 0 ? s : level, {static_cast<MutationKind>(k % 3), 0.5}, spec, rng);
      ++mutated;
      if (!validate_scenario(level).ok()) ++mutated_invalid;
    }
  }
  auto directed = scenario_by_name("2Fvs2F");
  directed.zones = {{ZoneType::bush, {20, 20}, {3, 1}, 0}};
  directed.max_zones = 1;
  const auto swapped = mutate_level(directed, {MutationKind::swap_axes, 0.1}, default_levelgen_spec(directed), rng);
  const bool swap_ok = swapped.zones[0].semi_axes == Vec2{1, 3} && swapped.zones[0].center == Vec2{20, 20};
  return {pass_if(sampled_invalid == 0 && mutated_invalid == 0 && swap_ok),
          fmt("%d sampled (%d invalid), %d mutated (%d invalid); swap_axes (3, 1) -> (%g, %g)", sampled,
              sampled_invalid, mutated, mutated_invalid, swapped.zones[0].semi_axes.x,
              swapped.zones[0].semi_axes.y)};
}

std::pair<Status, std::string> round_trip() {
  int checked = 0;
  int unstable = 0;
  auto check = [&](const ScenarioConfig& c) {
    const std::string once = save_scenario(c);
    const auto loaded = load_scenario(once, ScenarioCheck::none).config;
    if (save_scenario(loaded) != once || !(loaded == c)) ++unstable;
    ++checked;
  };
  int shipped_unstable = 0;
  for (const auto& [name, entry] : catalog()) {
    for (const auto& file : detail::embedded_scenario_files())
      if (entry.path == file.path && save_scenario(entry.config) != std::string(file.text)) ++shipped_unstable;
    check(entry.config);
  }
  const int catalog_size = checked;
  LevelRng rng(8);
  std::mt19937_64 mt(9);
  const char* bases[] = {"2F1M2Avs2S1K_2L2B2S", "ribbon", "1F1S1Avs1F1S1A_2L2B2S-2", "vsrangers"};
  for (int k = 0; k < 1000; ++k) {
    const auto spec = default_levelgen_spec(scenario_by_name(bases[k % 4]));
    auto c = sample_level(spec, rng);
    c.physics.dt = std::uniform_real_distribution<double>(0.01, 0.2)(mt);
    c.physics.rotation_step_deg = std::uniform_real_distribution<double>(1, 90)(mt);
    c.units[0].heading_deg = std::uniform_real_distribution<double>(-180, 180)(mt);
    check(c);
  }
  return {pass_if(unstable == 0 && shipped_unstable == 0),
          fmt("%d catalog files (%d differ from export), %d random configs; %d not byte-stable", catalog_size,
              shipped_unstable, checked - catalog_size, unstable)};
}

}  // namespace

int main() {
  run("reward telescoping", telescoping);
  run("trace determinism", trace_determinism);
  run("physics oracle", physics_oracle);
  run("boundary penalty", boundary_penalty);
  run("bush visibility table", bush_table);
  run("action mask soundness", mask_soundness);
  run("heuristic tier ordering", tier_ordering);
  run("batch throughput scaling", throughput_scaling);
  run("reset reconfiguration latency", reset_latency);
  run("generator and mutator validity", generator_validity);
  run("scenario round-trip", round_trip);
  std::printf("%d failed\n", failures);
  return failures == 0 ? 0 : 1;
}
