#include "tabx/canonical_json.hpp"
#include "tabx/trace.hpp"

namespace tabx {

using nlohmann::json;

namespace {

Winner parse_winner(const std::string& s) {
  if (s == "ally") return Winner::ally;
  if (s == "enemy") return Winner::enemy;
  throw std::invalid_argument("unknown winner '" + s + "'");
}

OutcomeReason parse_reason(const std::string& s) {
  for (auto r : {OutcomeReason::elimination, OutcomeReason::truncation_health, OutcomeReason::truncation_tie}) {
    if (to_string(r) == s) return r;
  }
  throw std::invalid_argument("unknown outcome reason '" + s + "'");
}

}  // namespace

TraceRecord make_trace_record(const StepResult& result, int episode) {
  TraceRecord rec;
  rec.episode = episode;
  rec.t = result.state.t;
  for (std::size_t k = 0; k < result.state.units.size(); ++k) {
    const UnitState& u = result.state.units[k];
    if (!u.active) continue;
    rec.units.push_back({static_cast<int>(k), u.team, u.position, u.heading, u.health, u.alive,
                         result.executed_actions[k], u.cooldown_timer, u.reveal_timer});
  }
  rec.reward = result.reward;
  rec.terminated = result.terminated;
  rec.truncated = result.truncated;
  if (result.terminated || result.truncated) rec.outcome = result.info.outcome;
  return rec;
}

json trace_to_json(const TraceRecord& r) {
  json units = json::array();
  for (const TraceUnit& u : r.units) {
    units.push_back({{"id", u.id},
                     {"team", u.team},
                     {"position", json::array({u.position.x, u.position.y})},
                     {"heading", u.heading},
                     {"health", u.health},
                     {"alive", u.alive},
                     {"action", u.action},
                     {"cooldown_timer", u.cooldown_timer},
                     {"reveal_timer", u.reveal_timer}});
  }
  json outcome = nullptr;
  if (r.outcome) {
    outcome = {{"winner", std::string(to_string(r.outcome->winner))},
               {"reason", std::string(to_string(r.outcome->reason))}};
  }
  return {{"episode", r.episode}, {"t", r.t},           {"units", units},          {"reward", r.reward},
          {"terminated", r.terminated}, {"truncated", r.truncated}, {"outcome", outcome}};
}

TraceRecord trace_from_json(const json& doc) {
  TraceRecord r;
  r.episode = doc.at("episode").get<int>();
  r.t = doc.at("t").get<int>();
  for (const json& u : doc.at("units")) {
    TraceUnit tu;
    tu.id = u.at("id").get<int>();
    tu.team = u.at("team").get<int>();
    tu.position = {u.at("position").at(0).get<double>(), u.at("position").at(1).get<double>()};
    tu.heading = u.at("heading").get<double>();
    tu.health = u.at("health").get<double>();
    tu.alive = u.at("alive").get<bool>();
    tu.action = u.at("action").get<int>();
    tu.cooldown_timer = u.at("cooldown_timer").get<double>();
    tu.reveal_timer = u.at("reveal_timer").get<double>();
    r.units.push_back(tu);
  }
  r.reward = doc.at("reward").get<double>();
  r.terminated = doc.at("terminated").get<bool>();
  r.truncated = doc.at("truncated").get<bool>();
  const json& o = doc.at("outcome");
  if (!o.is_null()) r.outcome = Outcome{parse_winner(o.at("winner")), parse_reason(o.at("reason"))};
  return r;
}

std::string trace_line(const TraceRecord& record) { return canonical_dump(trace_to_json(record), -1) + "\n"; }

std::vector<TraceRecord> read_trace(std::istream& in) {
  std::vector<TraceRecord> records;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      records.push_back(trace_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error("trace line " + std::to_string(number) + ": " + e.what());
    }
  }
  return records;
}

}  // namespace tabx
