#pragma once

#include "tabx/vec2.hpp"

namespace tabx {

// Moves are in the world frame, independent of heading.
enum Action : int {
  kMoveUp = 0,     // +y
  kMoveDown = 1,   // -y
  kMoveRight = 2,  // +x
  kMoveLeft = 3,   // -x
  kRotate = 4,     // counter-clockwise by the rotation step
  kAttack = 5,     // attack or heal
  kNoOp = 6,
};

inline constexpr int kNumActions = 7;

constexpr bool is_move(int action) { return action >= kMoveUp && action <= kMoveLeft; }

constexpr Vec2 move_direction(int action) {
  switch (action) {
    case kMoveUp: return {0.0, 1.0};
    case kMoveDown: return {0.0, -1.0};
    case kMoveRight: return {1.0, 0.0};
    case kMoveLeft: return {-1.0, 0.0};
    default: return {0.0, 0.0};
  }
}

}  // namespace tabx
