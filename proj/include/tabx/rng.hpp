#pragma once

// Counter-based random values: every draw is a pure function of
// (seed, stream, step, slot, tag), so results do not depend on how
// environments are scheduled across threads.

#include <cstdint>

namespace tabx {

enum class RandomTag : std::uint64_t {
  heuristic_override = 1,
  heuristic_override_action = 2,
  random_controller = 3,
  replay_fallback = 4,
  script = 5,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct RandomStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  constexpr std::uint64_t bits(std::uint64_t step, std::uint64_t slot, RandomTag tag) const {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ stream);
    h = splitmix64(h ^ step);
    h = splitmix64(h ^ slot);
    return splitmix64(h ^ static_cast<std::uint64_t>(tag));
  }

  /// Uniform in [0, 1).
  constexpr double uniform(std::uint64_t step, std::uint64_t slot, RandomTag tag) const {
    return static_cast<double>(bits(step, slot, tag) >> 11) * 0x1.0p-53;
  }

  /// Uniform in [0, n), n > 0.
  constexpr std::uint64_t below(std::uint64_t n, std::uint64_t step, std::uint64_t slot, RandomTag tag) const {
    return static_cast<std::uint64_t>(uniform(step, slot, tag) * static_cast<double>(n));
  }

  bool operator==(const RandomStream&) const = default;
};

/// Draws one binding to a fixed (step, slot) so that consumers only pick the tag.
struct RandomDraw {
  RandomStream stream;
  std::uint64_t step = 0;
  std::uint64_t slot = 0;

  double uniform(RandomTag tag) const { return stream.uniform(step, slot, tag); }
  std::uint64_t below(std::uint64_t n, RandomTag tag) const { return stream.below(n, step, slot, tag); }
};

}  // namespace tabx
