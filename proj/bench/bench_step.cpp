// Parallel batch step against its serial reference, and sweep contact
// detection against the all-pairs oracle.

#include <benchmark/benchmark.h>

#include <random>

#include "tabx/batch.hpp"
#include "tabx/catalog.hpp"
#include "tabx/physics.hpp"
#include "tabx/rollout.hpp"

namespace {

struct BatchFixture {
  std::vector<tabx::StepResult> envs;
  std::vector<tabx::JointAction> actions;

  explicit BatchFixture(int n) {
    auto config = std::make_shared<const tabx::ScenarioConfig>(tabx::apply_policies(
        tabx::scenario_by_name("2F1M2Avs2S1K_2L2B2S"), tabx::parse_policy("heuristic:medium"),
        tabx::parse_policy("heuristic:medium")));
    std::vector<std::shared_ptr<const tabx::ScenarioConfig>> configs(n, config);
    std::vector<std::uint64_t> seeds(n, 7);
    envs = tabx::reset_batch_serial(configs, seeds);
    actions.assign(n, tabx::JointAction(config->max_units, tabx::kNoOp));
  }

  void restart_finished() {
    for (auto& env : envs) {
      if (env.state.done) env = tabx::reset(env.state.config, env.state.rng.seed + 1, env.state.rng.stream);
    }
  }
};

void BM_StepBatchParallel(benchmark::State& state) {
  BatchFixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    tabx::step_batch_in_place(f.envs, f.actions);
    state.PauseTiming();
    f.restart_finished();
    state.ResumeTiming();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_StepBatchSerial(benchmark::State& state) {
  BatchFixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    tabx::step_batch_in_place_serial(f.envs, f.actions);
    state.PauseTiming();
    f.restart_finished();
    state.ResumeTiming();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<tabx::UnitState> random_units(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.0, 40.0);
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  std::vector<tabx::UnitState> units(n);
  for (auto& u : units) {
    u.active = true;
    u.alive = true;
    u.spec.body_radius = radius(rng);
    u.position = {pos(rng), pos(rng)};
  }
  return units;
}

void BM_DetectContacts(benchmark::State& state) {
  const auto units = random_units(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(tabx::detect_contacts(units));
}

void BM_DetectContactsReference(benchmark::State& state) {
  const auto units = random_units(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(tabx::detect_contacts_reference(units));
}

}  // namespace

BENCHMARK(BM_StepBatchParallel)->Arg(1)->Arg(64)->Arg(1024)->UseRealTime();
BENCHMARK(BM_StepBatchSerial)->Arg(1)->Arg(64)->Arg(1024)->UseRealTime();
BENCHMARK(BM_DetectContacts)->Arg(8)->Arg(32)->Arg(128)->Arg(512);
BENCHMARK(BM_DetectContactsReference)->Arg(8)->Arg(32)->Arg(128)->Arg(512);

BENCHMARK_MAIN();
