#pragma once

// Episode traces: one compact canonical JSON object per executed step.

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tabx/environment.hpp"

namespace tabx {

struct TraceUnit {
  int id = 0;  // slot index
  int team = 0;
  Vec2 position;
  double heading = 0.0;  // radians
  double health = 0.0;
  bool alive = false;
  int action = kNoOp;  // executed action after controller mapping
  double cooldown_timer = 0.0;
  double reveal_timer = 0.0;

  bool operator==(const TraceUnit&) const = default;
};

struct TraceRecord {
  int episode = 0;
  int t = 0;  // step counter after the step
  std::vector<TraceUnit> units;  // active slots only
  double reward = 0.0;           // ally reward, terminal bonus included
  bool terminated = false;
  bool truncated = false;
  std::optional<Outcome> outcome;

  bool operator==(const TraceRecord&) const = default;
};

TraceRecord make_trace_record(const StepResult& result, int episode);

nlohmann::json trace_to_json(const TraceRecord& record);
TraceRecord trace_from_json(const nlohmann::json& doc);

/// Canonical single-line text including the trailing newline.
std::string trace_line(const TraceRecord& record);

/// Reads every non-empty line. Throws std::runtime_error naming the line on
/// malformed input.
std::vector<TraceRecord> read_trace(std::istream& in);

}  // namespace tabx
