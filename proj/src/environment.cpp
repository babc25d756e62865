#include <algorithm>

#include "tabx/combat.hpp"
#include "tabx/environment.hpp"
#include "tabx/physics.hpp"

namespace tabx {

namespace {

struct TeamHealth {
  double ratio_sum[2] = {0.0, 0.0};
  int count[2] = {0, 0};
  bool any_alive[2] = {false, false};

  double mean(int team) const { return count[team] > 0 ? ratio_sum[team] / count[team] : 0.0; }
};

TeamHealth team_health(std::span<const UnitState> units) {
  TeamHealth th;
  for (const UnitState& u : units) {
    if (!u.active || (u.team != kAllyTeam && u.team != kEnemyTeam)) continue;
    th.ratio_sum[u.team] += u.health / u.spec.max_health;
    th.count[u.team] += 1;
    th.any_alive[u.team] = th.any_alive[u.team] || u.alive;
  }
  return th;
}

Controller controller_for(const ScenarioConfig& config, int team) {
  const TeamConfig* t = config.team(team);
  return t ? t->controller : Controller::external;
}

void fill_mask(const EnvState& s, std::span<std::uint8_t> mask) {
  std::fill(mask.begin(), mask.end(), 0);
  const bool noop = s.config->physics.enable_noop;
  for (std::size_t k = 0; k < s.units.size(); ++k) {
    auto row = mask.subspan(k * kNumActions, kNumActions);
    const UnitState& u = s.units[k];
    if (!u.alive) {
      row[kNoOp] = 1;
      continue;
    }
    for (int a = kMoveUp; a <= kRotate; ++a) row[a] = 1;
    row[kAttack] = u.cooldown_timer == 0.0 ? 1 : 0;
    row[kNoOp] = noop ? 1 : 0;
  }
}

// Rebuilds observations, global state and mask from the current state.
void refresh_outputs(StepResult& out) {
  const EnvState& s = out.state;
  const ObservationLayout layout = s.layout();
  const int n = layout.max_units;
  const BoolMatrix visibility = visibility_matrix(s.units, s.zones);
  const BoolMatrix attackable = attackable_matrix(s.units, visibility);

  const auto obs_dim = static_cast<std::size_t>(layout.total());
  out.observations.assign(obs_dim * n, 0.0f);
  for (int k = 0; k < n; ++k) {
    build_observation(k, s.units, s.zones, visibility, attackable, s.config->field,
                      std::span<float>(out.observations).subspan(k * obs_dim, obs_dim));
  }
  out.global_state.assign(static_cast<std::size_t>(layout.global_total()), 0.0f);
  build_global_state(s.units, s.zones, s.config->field, out.global_state);

  out.action_mask.assign(static_cast<std::size_t>(n) * kNumActions, 0);
  fill_mask(s, out.action_mask);
  out.info = s.info;
}

JointAction controller_actions(EnvState& s, const JointAction& external, std::span<const std::uint8_t> mask) {
  const int n = static_cast<int>(s.units.size());
  JointAction acts(n, kNoOp);
  const ScenarioConfig& config = *s.config;
  const Controller ctl[2] = {controller_for(config, kAllyTeam), controller_for(config, kEnemyTeam)};
  const bool needs_view = ctl[0] == Controller::heuristic || ctl[1] == Controller::heuristic;

  BoolMatrix visibility;
  BoolMatrix attackable;
  if (needs_view) {
    visibility = visibility_matrix(s.units, s.zones);
    attackable = attackable_matrix(s.units, visibility);
  }
  const HeuristicView view{s.units, s.zones, visibility, attackable, config.physics, config.field};

  for (int k = 0; k < n; ++k) {
    const UnitState& u = s.units[k];
    if (!u.alive) continue;
    const auto row = mask.subspan(static_cast<std::size_t>(k) * kNumActions, kNumActions);
    const RandomDraw draw{s.rng, static_cast<std::uint64_t>(s.t), static_cast<std::uint64_t>(k)};
    switch (ctl[u.team]) {
      case Controller::external:
        acts[k] = external[k];
        break;
      case Controller::random:
        acts[k] = uniform_valid_action(row, draw, RandomTag::random_controller);
        break;
      case Controller::heuristic: {
        const TeamConfig* team = config.team(u.team);
        const HeuristicParams params = team && team->heuristic ? *team->heuristic : HeuristicParams{};
        acts[k] = heuristic_step(k, view, s.memory[k], params, row, draw);
        break;
      }
    }
  }
  return acts;
}

}  // namespace

ObservationLayout EnvState::layout() const {
  return {static_cast<int>(units.size()), static_cast<int>(zones.size())};
}

bool EnvState::operator==(const EnvState& o) const {
  const bool same_config = config == o.config || (config && o.config && *config == *o.config);
  return same_config && units == o.units && zones == o.zones && memory == o.memory && rng == o.rng && t == o.t &&
         prev_health_gap == o.prev_health_gap && rotation_step == o.rotation_step && done == o.done &&
         info == o.info;
}

std::span<const float> StepResult::observation(int slot) const {
  const std::size_t dim = static_cast<std::size_t>(state.layout().total());
  return std::span<const float>(observations).subspan(static_cast<std::size_t>(slot) * dim, dim);
}

std::span<const std::uint8_t> StepResult::mask_row(int slot) const {
  return std::span<const std::uint8_t>(action_mask).subspan(static_cast<std::size_t>(slot) * kNumActions, kNumActions);
}

ActionError::ActionError(int agent, int action, const std::string& why)
    : std::runtime_error("agent " + std::to_string(agent) + ", action " + std::to_string(action) + ": " + why),
      agent_(agent),
      action_(action) {}

double health_gap(std::span<const UnitState> units) {
  const TeamHealth th = team_health(units);
  return th.mean(kAllyTeam) - th.mean(kEnemyTeam);
}

std::optional<Outcome> terminal_outcome(const EnvState& state) {
  const TeamHealth th = team_health(state.units);
  const bool ally = th.any_alive[kAllyTeam];
  const bool enemy = th.any_alive[kEnemyTeam];
  if (ally && !enemy) return Outcome{Winner::ally, OutcomeReason::elimination};
  if (!ally) return Outcome{Winner::enemy, OutcomeReason::elimination};
  if (state.t < state.config->max_steps) return std::nullopt;
  const double a = th.mean(kAllyTeam);
  const double e = th.mean(kEnemyTeam);
  if (a > e) return Outcome{Winner::ally, OutcomeReason::truncation_health};
  if (e > a) return Outcome{Winner::enemy, OutcomeReason::truncation_health};
  return Outcome{Winner::enemy, OutcomeReason::truncation_tie};
}

std::vector<std::uint8_t> action_mask(const EnvState& state) {
  std::vector<std::uint8_t> mask(state.units.size() * kNumActions, 0);
  fill_mask(state, mask);
  return mask;
}

StepResult reset(std::shared_ptr<const ScenarioConfig> config, std::uint64_t seed, std::uint64_t stream) {
  if (!config) throw std::invalid_argument("reset: null config");
  ValidationReport report = validate_scenario(*config);
  if (!report.ok()) throw ScenarioError(std::move(report));

  StepResult out;
  EnvState& s = out.state;
  s.config = std::move(config);
  const ScenarioConfig& c = *s.config;
  s.units.assign(static_cast<std::size_t>(c.max_units), UnitState{});
  for (std::size_t k = 0; k < c.units.size(); ++k) {
    const UnitPlacement& p = c.units[k];
    UnitState& u = s.units[k];
    u.spec = p.spec;
    u.team = p.team;
    u.position = p.position;
    u.heading = wrap_angle(deg_to_rad(p.heading_deg));
    u.health = p.spec.max_health;
    u.active = true;
    u.alive = true;
  }
  s.zones.assign(static_cast<std::size_t>(c.max_zones), Zone{});
  std::copy(c.zones.begin(), c.zones.end(), s.zones.begin());
  s.memory.assign(s.units.size(), HeuristicMemory{});
  s.rng = RandomStream{seed, stream};
  s.rotation_step = c.physics.rotation_step();
  s.prev_health_gap = health_gap(s.units);

  out.rewards.assign(s.units.size(), 0.0);
  out.executed_actions.assign(s.units.size(), kNoOp);
  refresh_outputs(out);
  return out;
}

StepResult reset(const ScenarioConfig& config, std::uint64_t seed, std::uint64_t stream) {
  return reset(std::make_shared<const ScenarioConfig>(config), seed, stream);
}

StepResult step(const EnvState& state, const JointAction& actions) {
  StepResult out;
  out.state = state;
  out.action_mask = action_mask(state);
  step_in_place(out, actions);
  return out;
}

void step_in_place(StepResult& env, const JointAction& actions) {
  EnvState& s = env.state;
  if (s.done) throw std::logic_error("step called on a finished episode");
  const ScenarioConfig& config = *s.config;
  const PhysicsParams& ph = config.physics;
  const int n = static_cast<int>(s.units.size());
  if (static_cast<int>(actions.size()) != n) {
    throw ActionError(-1, -1, "expected " + std::to_string(n) + " actions, got " + std::to_string(actions.size()));
  }
  if (env.action_mask.size() != static_cast<std::size_t>(n) * kNumActions) env.action_mask = action_mask(s);

  for (int k = 0; k < n; ++k) {
    const UnitState& u = s.units[k];
    if (!u.active || controller_for(config, u.team) != Controller::external) continue;
    const int a = actions[k];
    if (a < 0 || a >= kNumActions) throw ActionError(k, a, "action id out of range");
    if (!env.mask_row(k)[a]) throw ActionError(k, a, "action is masked");
  }

  // (1) controllers
  const JointAction acts = controller_actions(s, actions, env.action_mask);

  // (2) commanded velocities, swamp-scaled
  std::vector<Vec2> commanded(n);
  for (int k = 0; k < n; ++k) {
    const UnitState& u = s.units[k];
    if (u.alive && is_move(acts[k])) {
      commanded[k] = move_direction(acts[k]) * (u.spec.speed * swamp_multiplier(s.zones, u.position));
    }
  }

  // (3)-(5) physics
  integrate_kinematics(s.units, commanded, ph.dt);
  const std::vector<Contact> contacts = detect_contacts(s.units);
  resolve_contacts(s.units, contacts, ph);
  apply_boundary(s.units, config.field, ph.boundary_damage_coeff, ph.dt);

  // (6) rotation
  for (int k = 0; k < n; ++k) {
    if (s.units[k].alive && acts[k] == kRotate) s.units[k].heading = wrap_angle(s.units[k].heading + s.rotation_step);
  }

  // (7)-(9) perception and combat
  {
    const BoolMatrix visibility = visibility_matrix(s.units, s.zones);
    const BoolMatrix attackable = attackable_matrix(s.units, visibility);
    const InteractionMatrix attacked = resolve_combat(s.units, acts, attackable);
    update_reveal_timers(s.units, attacked, ph.reveal_duration);
  }

  // (10) lava
  for (UnitState& u : s.units) {
    if (!u.alive) continue;
    const double rate = lava_rate(s.zones, u.position);
    if (rate > 0.0) u.health = std::max(0.0, u.health - rate * ph.dt);
  }

  // (11) alive flags
  bool died[2] = {false, false};
  for (UnitState& u : s.units) {
    const bool alive = u.active && u.health > 0.0;
    if (u.alive && !alive) died[u.team] = true;
    u.alive = alive;
  }
  if (!s.info.first_kill_resolved && (died[0] || died[1])) {
    s.info.first_kill_resolved = true;
    if (died[0] != died[1]) s.info.first_kill_team = died[0] ? kEnemyTeam : kAllyTeam;
  }

  // (12) reward and termination
  s.t += 1;
  const double gap = health_gap(s.units);
  double reward = gap - s.prev_health_gap;
  s.prev_health_gap = gap;

  env.terminated = false;
  env.truncated = false;
  if (auto outcome = terminal_outcome(s)) {
    s.info.outcome = outcome;
    s.done = true;
    env.terminated = outcome->reason == OutcomeReason::elimination;
    env.truncated = !env.terminated;
    reward += outcome->winner == Winner::ally ? 1.0 : -1.0;
  }
  s.info.episode_length = s.t;
  s.info.episode_return += reward;

  env.reward = reward;
  env.rewards.assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    if (s.units[k].active) env.rewards[k] = s.units[k].team == kAllyTeam ? reward : -reward;
  }
  env.executed_actions.assign(n, kNoOp);
  for (int k = 0; k < n; ++k) {
    if (s.units[k].active) env.executed_actions[k] = acts[k];
  }
  refresh_outputs(env);
}

}  // namespace tabx
