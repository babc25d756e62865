#pragma once

// Batched reset/step. The OpenMP entry points partition environments across
// threads; the serial variants are the reference the parallel ones must match.

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tabx/environment.hpp"

namespace tabx {

struct BatchFailure {
  int index = 0;
  std::string message;
};

/// Raised after the whole batch has run when at least one element failed.
/// Elements that did not fail hold valid results.
class BatchError : public std::runtime_error {
 public:
  explicit BatchError(std::vector<BatchFailure> failures);
  const std::vector<BatchFailure>& failures() const { return failures_; }

 private:
  std::vector<BatchFailure> failures_;
};

struct BatchOptions {
  int threads = 0;                  // <= 0 uses the OpenMP default team size
  std::uint64_t stream_offset = 0;  // reset: environment k uses stream offset + k
  bool skip_done = false;           // step: leave finished environments untouched
};

/// Environment k uses random stream options.stream_offset + k. All configs must share
/// (max_units, max_zones) with the first one.
std::vector<StepResult> reset_batch(std::span<const std::shared_ptr<const ScenarioConfig>> configs,
                                    std::span<const std::uint64_t> seeds, BatchOptions options = {});

void step_batch_in_place(std::span<StepResult> envs, std::span<const JointAction> actions, BatchOptions options = {});

std::vector<StepResult> step_batch(std::span<const EnvState> states, std::span<const JointAction> actions,
                                   BatchOptions options = {});

std::vector<StepResult> reset_batch_serial(std::span<const std::shared_ptr<const ScenarioConfig>> configs,
                                           std::span<const std::uint64_t> seeds, BatchOptions options = {});
void step_batch_in_place_serial(std::span<StepResult> envs, std::span<const JointAction> actions,
                                BatchOptions options = {});
std::vector<StepResult> step_batch_serial(std::span<const EnvState> states, std::span<const JointAction> actions);

}  // namespace tabx
