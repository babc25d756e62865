#include <omp.h>

#include "tabx/batch.hpp"

namespace tabx {

namespace {

std::string join_failures(const std::vector<BatchFailure>& failures) {
  std::string text = std::to_string(failures.size()) + " batch element(s) failed";
  for (const auto& f : failures) text += "\n  [" + std::to_string(f.index) + "] " + f.message;
  return text;
}

void check_sizes(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": size mismatch (" + std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
  }
}

std::optional<std::string> shape_mismatch(const ScenarioConfig* first, const ScenarioConfig* c) {
  if (!first || !c) return std::nullopt;
  if (c->max_units != first->max_units || c->max_zones != first->max_zones) {
    return "shape bounds (" + std::to_string(c->max_units) + ", " + std::to_string(c->max_zones) +
           ") differ from the batch's (" + std::to_string(first->max_units) + ", " +
           std::to_string(first->max_zones) + ")";
  }
  return std::nullopt;
}

// Runs body(k) for every element, collecting exceptions per index.
template <typename Body>
void run_elements(std::size_t n, bool parallel, int threads, Body&& body) {
  std::vector<std::optional<std::string>> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
  auto one = [&](std::ptrdiff_t k) {
    try {
      body(static_cast<std::size_t>(k));
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  };
  if (parallel) {
    const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(team)
    for (std::ptrdiff_t k = 0; k < count; ++k) one(k);
  } else {
    for (std::ptrdiff_t k = 0; k < count; ++k) one(k);
  }
  std::vector<BatchFailure> failures;
  for (std::size_t k = 0; k < n; ++k) {
    if (errors[k]) failures.push_back({static_cast<int>(k), *errors[k]});
  }
  if (!failures.empty()) throw BatchError(std::move(failures));
}

std::vector<StepResult> reset_impl(std::span<const std::shared_ptr<const ScenarioConfig>> configs,
                                   std::span<const std::uint64_t> seeds, bool parallel, const BatchOptions& options) {
  check_sizes(configs.size(), seeds.size(), "reset_batch");
  std::vector<StepResult> out(configs.size());
  const ScenarioConfig* first = configs.empty() ? nullptr : configs.front().get();
  run_elements(configs.size(), parallel, options.threads, [&](std::size_t k) {
    if (auto why = shape_mismatch(first, configs[k].get())) throw std::invalid_argument(*why);
    out[k] = reset(configs[k], seeds[k], options.stream_offset + k);
  });
  return out;
}

void step_in_place_impl(std::span<StepResult> envs, std::span<const JointAction> actions, bool parallel,
                        const BatchOptions& options) {
  check_sizes(envs.size(), actions.size(), "step_batch");
  run_elements(envs.size(), parallel, options.threads, [&](std::size_t k) {
    if (options.skip_done && envs[k].state.done) return;
    step_in_place(envs[k], actions[k]);
  });
}

std::vector<StepResult> step_impl(std::span<const EnvState> states, std::span<const JointAction> actions,
                                  bool parallel, int threads) {
  check_sizes(states.size(), actions.size(), "step_batch");
  std::vector<StepResult> out(states.size());
  run_elements(states.size(), parallel, threads, [&](std::size_t k) { out[k] = step(states[k], actions[k]); });
  return out;
}

}  // namespace

BatchError::BatchError(std::vector<BatchFailure> failures)
    : std::runtime_error(join_failures(failures)), failures_(std::move(failures)) {}

std::vector<StepResult> reset_batch(std::span<const std::shared_ptr<const ScenarioConfig>> configs,
                                    std::span<const std::uint64_t> seeds, BatchOptions options) {
  return reset_impl(configs, seeds, true, options);
}

void step_batch_in_place(std::span<StepResult> envs, std::span<const JointAction> actions, BatchOptions options) {
  step_in_place_impl(envs, actions, true, options);
}

std::vector<StepResult> step_batch(std::span<const EnvState> states, std::span<const JointAction> actions,
                                   BatchOptions options) {
  return step_impl(states, actions, true, options.threads);
}

std::vector<StepResult> reset_batch_serial(std::span<const std::shared_ptr<const ScenarioConfig>> configs,
                                           std::span<const std::uint64_t> seeds, BatchOptions options) {
  return reset_impl(configs, seeds, false, options);
}

void step_batch_in_place_serial(std::span<StepResult> envs, std::span<const JointAction> actions,
                                BatchOptions options) {
  step_in_place_impl(envs, actions, false, options);
}

std::vector<StepResult> step_batch_serial(std::span<const EnvState> states, std::span<const JointAction> actions) {
  return step_impl(states, actions, false, 1);
}

}  // namespace tabx
