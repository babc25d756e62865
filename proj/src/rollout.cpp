#include <omp.h>

#include <algorithm>
#include <fstream>

#include "tabx/batch.hpp"
#include "tabx/rollout.hpp"
#include "tabx/svg.hpp"

namespace tabx {

namespace {

struct EpisodeOutput {
  std::string trace;
  double episode_return = 0.0;
  int length = 0;
  bool win = false;
  bool first_kill = false;
};

struct Policies {
  const PolicySpec* team[2];
};

JointAction policy_actions(const StepResult& env, int episode, const Policies& policies) {
  const EnvState& s = env.state;
  JointAction acts(s.units.size(), kNoOp);
  for (std::size_t k = 0; k < s.units.size(); ++k) {
    const UnitState& u = s.units[k];
    if (!u.alive) continue;
    const PolicySpec& p = *policies.team[u.team];
    if (p.kind != PolicySpec::Kind::replay) continue;
    const auto row = env.mask_row(static_cast<int>(k));
    std::optional<int> a = p.replay ? p.replay->action(episode, s.t, static_cast<int>(k)) : std::nullopt;
    if (!a || *a < 0 || *a >= kNumActions || !row[*a]) {
      const RandomDraw draw{s.rng, static_cast<std::uint64_t>(s.t), k};
      a = uniform_valid_action(row, draw, RandomTag::replay_fallback);
    }
    acts[k] = *a;
  }
  return acts;
}

class EpisodeRecorder {
 public:
  EpisodeRecorder(int episode, bool tracing, const RolloutOptions& options)
      : episode_(episode), tracing_(tracing) {
    if (!options.svg_dir.empty() && episode < options.svg_episodes) {
      svg_dir_ = options.svg_dir / ("episode_" + std::to_string(episode));
    }
  }

  void start(const StepResult& env) {
    if (!svg_dir_.empty()) {
      std::filesystem::create_directories(svg_dir_);
      write_svg_frame(svg_dir_, env.state);
    }
  }

  void record(const StepResult& env) {
    if (tracing_) out_.trace += trace_line(make_trace_record(env, episode_));
    if (!svg_dir_.empty()) write_svg_frame(svg_dir_, env.state);
  }

  EpisodeOutput finish(const StepResult& env) {
    const EpisodeInfo& info = env.state.info;
    out_.episode_return = info.episode_return;
    out_.length = info.episode_length;
    out_.win = info.outcome && info.outcome->winner == Winner::ally;
    out_.first_kill = info.first_kill_team == kAllyTeam;
    return std::move(out_);
  }

 private:
  int episode_;
  bool tracing_;
  std::filesystem::path svg_dir_;
  EpisodeOutput out_;
};

EpisodeOutput run_episode(const std::shared_ptr<const ScenarioConfig>& config, int episode, std::uint64_t seed,
                          const Policies& policies, bool tracing, const RolloutOptions& options) {
  StepResult env = reset(config, seed, static_cast<std::uint64_t>(episode));
  EpisodeRecorder rec(episode, tracing, options);
  rec.start(env);
  while (!env.state.done) {
    step_in_place(env, policy_actions(env, episode, policies));
    rec.record(env);
  }
  return rec.finish(env);
}

void run_group(const std::shared_ptr<const ScenarioConfig>& config, int first, int count, std::uint64_t seed,
               const Policies& policies, bool tracing, const RolloutOptions& options,
               std::vector<EpisodeOutput>& out) {
  std::vector<std::shared_ptr<const ScenarioConfig>> configs(count, config);
  std::vector<std::uint64_t> seeds(count, seed);
  BatchOptions batch{options.threads, static_cast<std::uint64_t>(first), true};
  std::vector<StepResult> envs = reset_batch(configs, seeds, batch);
  std::vector<EpisodeRecorder> recorders;
  for (int k = 0; k < count; ++k) {
    recorders.emplace_back(first + k, tracing, options);
    recorders[k].start(envs[k]);
  }
  std::vector<JointAction> actions(count);
  auto all_done = [&] {
    return std::all_of(envs.begin(), envs.end(), [](const StepResult& e) { return e.state.done; });
  };
  while (!all_done()) {
    std::vector<bool> was_done(count);
    for (int k = 0; k < count; ++k) {
      was_done[k] = envs[k].state.done;
      if (!was_done[k]) actions[k] = policy_actions(envs[k], first + k, policies);
    }
    step_batch_in_place(envs, actions, batch);
    for (int k = 0; k < count; ++k) {
      if (!was_done[k]) recorders[k].record(envs[k]);
    }
  }
  for (int k = 0; k < count; ++k) out[k] = recorders[k].finish(envs[k]);
}

void accumulate(RolloutSummary& s, const EpisodeOutput& e) {
  s.episodes += 1;
  s.wins += e.win ? 1 : 0;
  s.first_kills += e.first_kill ? 1 : 0;
  s.total_return += e.episode_return;
  s.total_length += e.length;
}

void finalize(RolloutSummary& s) {
  if (s.episodes == 0) return;
  const double n = s.episodes;
  s.win_rate = s.wins / n;
  s.mean_return = s.total_return / n;
  s.mean_length = static_cast<double>(s.total_length) / n;
  s.first_kill_rate = s.first_kills / n;
}

}  // namespace

std::optional<int> ReplayScript::action(int episode, int step, int slot) const {
  auto e = actions.find(episode);
  if (e == actions.end() || step < 0 || step >= static_cast<int>(e->second.size())) return std::nullopt;
  const auto& row = e->second[step];
  auto a = row.find(slot);
  if (a == row.end()) return std::nullopt;
  return a->second;
}

ReplayScript replay_from_trace(const std::vector<TraceRecord>& records) {
  ReplayScript script;
  for (const TraceRecord& r : records) {
    if (r.t < 1) continue;
    auto& steps = script.actions[r.episode];
    if (static_cast<int>(steps.size()) < r.t) steps.resize(r.t);
    for (const TraceUnit& u : r.units) steps[r.t - 1][u.id] = u.action;
  }
  return script;
}

std::string PolicySpec::str() const {
  switch (kind) {
    case Kind::random: return "random";
    case Kind::heuristic: return "heuristic:" + source;
    case Kind::replay: return "replay:" + source;
  }
  return "random";
}

PolicySpec parse_policy(std::string_view text) {
  PolicySpec p;
  if (text == "random") return p;
  if (text.starts_with("heuristic:")) {
    p.kind = PolicySpec::Kind::heuristic;
    p.source = std::string(text.substr(10));
    auto params = heuristic_tier(p.source);
    if (!params) throw std::invalid_argument("unknown heuristic tier '" + p.source + "'");
    p.heuristic = *params;
    return p;
  }
  if (text.starts_with("replay:")) {
    p.kind = PolicySpec::Kind::replay;
    p.source = std::string(text.substr(7));
    std::ifstream in(p.source);
    if (!in) throw std::runtime_error("cannot open replay trace " + p.source);
    p.replay = std::make_shared<const ReplayScript>(replay_from_trace(read_trace(in)));
    return p;
  }
  throw std::invalid_argument("unknown policy '" + std::string(text) +
                              "' (expected random, heuristic:<tier> or replay:<trace>)");
}

ScenarioConfig apply_policies(const ScenarioConfig& config, const PolicySpec& ally, const PolicySpec& enemy) {
  ScenarioConfig c = config;
  for (TeamConfig& t : c.teams) {
    const PolicySpec& p = t.id == kAllyTeam ? ally : enemy;
    switch (p.kind) {
      case PolicySpec::Kind::random:
        t.controller = Controller::random;
        break;
      case PolicySpec::Kind::heuristic:
        t.controller = Controller::heuristic;
        t.heuristic = p.heuristic;
        break;
      case PolicySpec::Kind::replay:
        t.controller = Controller::external;
        break;
    }
  }
  return c;
}

RolloutSummary run_rollouts(const ScenarioConfig& config, const PolicySpec& ally, const PolicySpec& enemy,
                            int episodes, std::uint64_t seed, const RolloutOptions& options) {
  RolloutSummary summary;
  if (episodes <= 0) return summary;
  auto cfg = std::make_shared<const ScenarioConfig>(apply_policies(config, ally, enemy));
  {
    ValidationReport report = validate_scenario(*cfg);
    if (!report.ok()) throw ScenarioError(std::move(report));
  }
  const Policies policies{{&ally, &enemy}};
  const bool tracing = options.trace != nullptr;
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
  const int block = options.batch_size > 1 ? options.batch_size : std::max(64, threads * 8);

  for (int first = 0; first < episodes; first += block) {
    const int count = std::min(block, episodes - first);
    std::vector<EpisodeOutput> out(count);
    if (options.batch_size > 1) {
      run_group(cfg, first, count, seed, policies, tracing, options, out);
    } else {
      std::vector<std::string> errors(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
      for (int k = 0; k < count; ++k) {
        try {
          out[k] = run_episode(cfg, first + k, seed, policies, tracing, options);
        } catch (const std::exception& e) {
          errors[k] = e.what();
        }
      }
      for (int k = 0; k < count; ++k) {
        if (!errors[k].empty()) throw std::runtime_error("episode " + std::to_string(first + k) + ": " + errors[k]);
      }
    }
    for (int k = 0; k < count; ++k) {
      const EpisodeOutput& e = out[k];
      if (tracing) {
        *options.trace << e.trace;
        if (!*options.trace) throw std::runtime_error("trace sink write failed");
      }
      accumulate(summary, e);
    }
  }
  finalize(summary);
  return summary;
}

RolloutSummary summarize_trace(const std::vector<TraceRecord>& records) {
  RolloutSummary summary;
  std::map<int, EpisodeOutput> episodes;
  std::map<int, std::map<int, bool>> alive;
  std::map<int, bool> kill_resolved;
  for (const TraceRecord& r : records) {
    EpisodeOutput& e = episodes[r.episode];
    e.episode_return += r.reward;
    e.length = r.t;
    auto& prev = alive[r.episode];
    bool died[2] = {false, false};
    for (const TraceUnit& u : r.units) {
      auto it = prev.find(u.id);
      const bool was_alive = it == prev.end() ? true : it->second;
      if (was_alive && !u.alive && (u.team == kAllyTeam || u.team == kEnemyTeam)) died[u.team] = true;
      prev[u.id] = u.alive;
    }
    if (!kill_resolved[r.episode] && (died[0] || died[1])) {
      kill_resolved[r.episode] = true;
      e.first_kill = died[kEnemyTeam] && !died[kAllyTeam];
    }
    if (r.outcome) e.win = r.outcome->winner == Winner::ally;
  }
  for (const auto& [id, e] : episodes) accumulate(summary, e);
  finalize(summary);
  return summary;
}

}  // namespace tabx
