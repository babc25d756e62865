#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "tabx/canonical_json.hpp"
#include "tabx/scenario_io.hpp"

namespace tabx {

using nlohmann::json;

namespace {

template <typename T>
struct NumberField {
  std::string_view key;
  double T::*member;
};

constexpr NumberField<UnitSpec> kSpecNumbers[] = {
    {"max_health", &UnitSpec::max_health},       {"body_radius", &UnitSpec::body_radius},
    {"body_mass", &UnitSpec::body_mass},         {"speed", &UnitSpec::speed},
    {"attack_damage", &UnitSpec::attack_damage}, {"attack_range", &UnitSpec::attack_range},
    {"attack_cooldown", &UnitSpec::attack_cooldown}, {"sight_angle", &UnitSpec::sight_angle},
    {"sight_range", &UnitSpec::sight_range},
};

constexpr NumberField<PhysicsParams> kPhysicsNumbers[] = {
    {"dt", &PhysicsParams::dt},
    {"restitution", &PhysicsParams::restitution},
    {"penetration_slop", &PhysicsParams::penetration_slop},
    {"correction_percent", &PhysicsParams::correction_percent},
    {"rotation_step_deg", &PhysicsParams::rotation_step_deg},
    {"boundary_damage_coeff", &PhysicsParams::boundary_damage_coeff},
    {"reveal_duration", &PhysicsParams::reveal_duration},
};

constexpr NumberField<FieldSpec> kFieldNumbers[] = {
    {"width", &FieldSpec::width},
    {"height", &FieldSpec::height},
    {"margin", &FieldSpec::margin},
};

constexpr NumberField<HeuristicParams> kHeuristicNumbers[] = {
    {"epsilon", &HeuristicParams::epsilon},
    {"aggressive_threshold", &HeuristicParams::aggressive_threshold},
};

constexpr NumberField<HeuristicParams> kHeuristicOptionalNumbers[] = {
    {"assassin_speed_threshold", &HeuristicParams::assassin_speed_threshold},
    {"ranger_range_threshold", &HeuristicParams::ranger_range_threshold},
};

std::string join(std::string_view path, std::string_view key) {
  if (path.empty()) return std::string(key);
  return std::string(path) + "." + std::string(key);
}

std::string indexed(std::string_view path, std::size_t k) {
  return std::string(path) + "[" + std::to_string(k) + "]";
}

class Reader {
 public:
  ValidationReport report;

  void violation(std::string path, std::string message) {
    report.violations.push_back({std::move(path), std::move(message)});
  }
  void note(const std::string& path, const std::string& message) { report.notes.push_back(path + " " + message); }

  bool expect_object(const json& v, const std::string& path) {
    if (v.is_object()) return true;
    violation(path, "must be an object");
    return false;
  }

  void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
        violation(join(path, it.key()), "unknown key");
      }
    }
  }

  const json* find(const json& obj, std::string_view key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  bool as_double(const json& v, const std::string& path, double& out) {
    if (!v.is_number()) {
      violation(path, "must be a number");
      return false;
    }
    out = v.get<double>();
    return true;
  }

  bool as_int(const json& v, const std::string& path, int& out) {
    if (!v.is_number_integer()) {
      violation(path, "must be an integer");
      return false;
    }
    const auto wide = v.get<long long>();
    if (wide < std::numeric_limits<int>::min() || wide > std::numeric_limits<int>::max()) {
      violation(path, "out of integer range");
      return false;
    }
    out = static_cast<int>(wide);
    return true;
  }

  bool as_bool(const json& v, const std::string& path, bool& out) {
    if (!v.is_boolean()) {
      violation(path, "must be a boolean");
      return false;
    }
    out = v.get<bool>();
    return true;
  }

  bool as_string(const json& v, const std::string& path, std::string& out) {
    if (!v.is_string()) {
      violation(path, "must be a string");
      return false;
    }
    out = v.get<std::string>();
    return true;
  }

  bool as_vec2(const json& v, const std::string& path, Vec2& out) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      violation(path, "must be an array of two numbers");
      return false;
    }
    out = {v[0].get<double>(), v[1].get<double>()};
    return true;
  }

  // Optional member: missing keys keep the default and leave a note when noted is set.
  template <typename T, typename Fn>
  void optional(const json& obj, std::string_view key, const std::string& path, T& out, Fn&& convert,
                bool noted = true) {
    const std::string p = join(path, key);
    if (const json* v = find(obj, key)) {
      convert(*v, p, out);
    } else if (noted) {
      note(p, "missing, default applied");
    }
  }

  template <typename T, typename Fn>
  void required(const json& obj, std::string_view key, const std::string& path, T& out, Fn&& convert) {
    const std::string p = join(path, key);
    if (const json* v = find(obj, key)) {
      convert(*v, p, out);
    } else {
      violation(p, "is required");
    }
  }

  template <typename T, std::size_t N>
  void numbers(const json& obj, const std::string& path, T& target, const NumberField<T> (&fields)[N],
               bool noted = true) {
    for (const auto& f : fields) {
      optional(obj, f.key, path, target.*(f.member),
               [&](const json& v, const std::string& p, double& out) { return as_double(v, p, out); }, noted);
    }
  }
};

auto double_reader(Reader& r) {
  return [&r](const json& v, const std::string& p, double& out) { return r.as_double(v, p, out); };
}
auto int_reader(Reader& r) {
  return [&r](const json& v, const std::string& p, int& out) { return r.as_int(v, p, out); };
}
auto vec2_reader(Reader& r) {
  return [&r](const json& v, const std::string& p, Vec2& out) { return r.as_vec2(v, p, out); };
}

void read_spec_fields(Reader& r, const json& obj, const std::string& path, UnitSpec& spec, bool noted) {
  r.check_keys(obj, path,
               {"name", "max_health", "body_radius", "body_mass", "speed", "attack_damage", "attack_range",
                "attack_cooldown", "sight_angle", "sight_range", "space_occupied", "kinematic"});
  r.optional(obj, "name", path, spec.name,
             [&](const json& v, const std::string& p, std::string& out) { return r.as_string(v, p, out); }, noted);
  r.numbers(obj, path, spec, kSpecNumbers, noted);
  r.optional(obj, "space_occupied", path, spec.space_occupied, int_reader(r), noted);
  r.optional(obj, "kinematic", path, spec.kinematic,
             [&](const json& v, const std::string& p, bool& out) { return r.as_bool(v, p, out); }, noted);
}

void read_unit(Reader& r, const json& u, const std::string& path, UnitPlacement& out) {
  if (!r.expect_object(u, path)) return;
  r.check_keys(u, path, {"team", "preset", "spec", "overrides", "position", "heading_deg"});
  r.required(u, "team", path, out.team, int_reader(r));
  r.required(u, "position", path, out.position, vec2_reader(r));
  r.optional(u, "heading_deg", path, out.heading_deg, double_reader(r));

  const json* preset = r.find(u, "preset");
  const json* spec = r.find(u, "spec");
  const json* overrides = r.find(u, "overrides");
  if (preset && spec) {
    r.violation(path, "has both preset and spec");
    return;
  }
  if (preset) {
    std::string name;
    if (!r.as_string(*preset, join(path, "preset"), name)) return;
    auto found = find_preset(name);
    if (!found) {
      r.violation(join(path, "preset"), "unknown preset '" + name + "'");
      return;
    }
    out.preset = found->name;
    out.spec = *found;
    if (overrides && r.expect_object(*overrides, join(path, "overrides"))) {
      read_spec_fields(r, *overrides, join(path, "overrides"), out.spec, false);
    }
  } else if (spec) {
    if (overrides) r.violation(join(path, "overrides"), "requires a preset");
    out.preset.reset();
    if (r.expect_object(*spec, join(path, "spec"))) read_spec_fields(r, *spec, join(path, "spec"), out.spec, true);
  } else {
    r.violation(path, "needs a preset or a spec");
  }
}

void read_zone(Reader& r, const json& z, const std::string& path, Zone& out) {
  if (!r.expect_object(z, path)) return;
  r.check_keys(z, path, {"type", "center", "semi_axes", "effect"});
  std::string type;
  r.required(z, "type", path, type,
             [&](const json& v, const std::string& p, std::string& s) { return r.as_string(v, p, s); });
  if (!type.empty()) {
    if (auto t = parse_zone_type(type)) {
      out.type = *t;
    } else {
      r.violation(join(path, "type"), "unknown zone type '" + type + "'");
    }
  }
  r.required(z, "center", path, out.center, vec2_reader(r));
  r.required(z, "semi_axes", path, out.semi_axes, vec2_reader(r));
  if (out.type == ZoneType::bush || out.type == ZoneType::inactive) {
    out.effect = 0.0;
    r.optional(z, "effect", path, out.effect, double_reader(r), false);
  } else {
    r.required(z, "effect", path, out.effect, double_reader(r));
  }
}

void read_team(Reader& r, const json& t, const std::string& path, TeamConfig& out) {
  if (!r.expect_object(t, path)) return;
  r.check_keys(t, path, {"id", "controller", "heuristic"});
  r.required(t, "id", path, out.id, int_reader(r));
  std::string controller = "external";
  r.optional(t, "controller", path, controller,
             [&](const json& v, const std::string& p, std::string& s) { return r.as_string(v, p, s); });
  if (auto c = parse_controller(controller)) {
    out.controller = *c;
  } else {
    r.violation(join(path, "controller"), "unknown controller '" + controller + "'");
  }
  if (const json* h = r.find(t, "heuristic")) {
    const std::string hp = join(path, "heuristic");
    if (r.expect_object(*h, hp)) {
      r.check_keys(*h, hp, {"epsilon", "aggressive_threshold", "assassin_speed_threshold", "ranger_range_threshold"});
      HeuristicParams params;
      r.numbers(*h, hp, params, kHeuristicNumbers);
      r.numbers(*h, hp, params, kHeuristicOptionalNumbers, false);
      out.heuristic = params;
    }
  } else if (out.controller == Controller::heuristic) {
    out.heuristic = HeuristicParams{};
    r.note(join(path, "heuristic"), "missing, default applied");
  }
}

template <typename T, typename Fn>
void read_list(Reader& r, const json& doc, std::string_view key, std::vector<T>& out, Fn&& read_one) {
  const json* list = r.find(doc, key);
  const std::string path(key);
  if (!list) {
    r.note(path, "missing, default applied");
    return;
  }
  if (!list->is_array()) {
    r.violation(path, "must be an array");
    return;
  }
  out.clear();
  out.resize(list->size());
  for (std::size_t k = 0; k < list->size(); ++k) read_one((*list)[k], indexed(path, k), out[k]);
}

json vec2_json(Vec2 v) { return json::array({v.x, v.y}); }

json spec_json(const UnitSpec& s) {
  json j = json::object();
  j["name"] = s.name;
  for (const auto& f : kSpecNumbers) j[std::string(f.key)] = s.*(f.member);
  j["space_occupied"] = s.space_occupied;
  j["kinematic"] = s.kinematic;
  return j;
}

json spec_diff_json(const UnitSpec& s, const UnitSpec& base) {
  json j = json::object();
  if (s.name != base.name) j["name"] = s.name;
  for (const auto& f : kSpecNumbers) {
    if (s.*(f.member) != base.*(f.member)) j[std::string(f.key)] = s.*(f.member);
  }
  if (s.space_occupied != base.space_occupied) j["space_occupied"] = s.space_occupied;
  if (s.kinematic != base.kinematic) j["kinematic"] = s.kinematic;
  return j;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k < std::min(offset, text.size()); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

ScenarioFormatError::ScenarioFormatError(std::size_t offset, std::size_t line, std::size_t column,
                                         const std::string& what)
    : std::runtime_error("byte " + std::to_string(offset) + " (line " + std::to_string(line) + ", column " +
                         std::to_string(column) + "): " + what),
      offset_(offset),
      line_(line),
      column_(column) {}

LoadedScenario scenario_from_json(const json& doc, ScenarioCheck check) {
  Reader r;
  LoadedScenario out;
  ScenarioConfig& c = out.config;

  if (!doc.is_object()) {
    r.violation("$", "must be an object");
    throw ScenarioError(std::move(r.report));
  }
  r.check_keys(doc, "", {"version", "name", "field", "physics", "max_steps", "teams", "units", "zones", "max_units",
                         "max_zones"});

  int version = kScenarioFormatVersion;
  r.optional(doc, "version", "", version, int_reader(r));
  if (version != kScenarioFormatVersion) r.violation("version", "unsupported version " + std::to_string(version));

  r.optional(doc, "name", "", c.name,
             [&](const json& v, const std::string& p, std::string& s) { return r.as_string(v, p, s); });

  if (const json* f = r.find(doc, "field")) {
    if (r.expect_object(*f, "field")) {
      r.check_keys(*f, "field", {"width", "height", "margin"});
      r.numbers(*f, "field", c.field, kFieldNumbers);
    }
  } else {
    r.note("field", "missing, default applied");
  }

  if (const json* p = r.find(doc, "physics")) {
    if (r.expect_object(*p, "physics")) {
      r.check_keys(*p, "physics",
                   {"dt", "restitution", "penetration_slop", "correction_percent", "rotation_step_deg",
                    "boundary_damage_coeff", "reveal_duration", "enable_noop"});
      r.numbers(*p, "physics", c.physics, kPhysicsNumbers);
      r.optional(*p, "enable_noop", "physics", c.physics.enable_noop,
                 [&](const json& v, const std::string& path, bool& b) { return r.as_bool(v, path, b); });
    }
  } else {
    r.note("physics", "missing, default applied");
  }

  r.optional(doc, "max_steps", "", c.max_steps, int_reader(r));

  if (r.find(doc, "teams")) {
    read_list(r, doc, "teams", c.teams,
              [&](const json& t, const std::string& p, TeamConfig& team) { read_team(r, t, p, team); });
  } else if (check != ScenarioCheck::zone_layout) {
    c.teams = default_teams();
    r.note("teams", "missing, default applied");
  }

  read_list(r, doc, "units", c.units,
            [&](const json& u, const std::string& p, UnitPlacement& unit) { read_unit(r, u, p, unit); });
  read_list(r, doc, "zones", c.zones, [&](const json& z, const std::string& p, Zone& zone) { read_zone(r, z, p, zone); });

  c.max_units = static_cast<int>(c.units.size());
  c.max_zones = static_cast<int>(c.zones.size());
  r.optional(doc, "max_units", "", c.max_units, int_reader(r));
  r.optional(doc, "max_zones", "", c.max_zones, int_reader(r));

  if (!r.report.ok()) throw ScenarioError(std::move(r.report));

  ValidationReport checked;
  if (check == ScenarioCheck::full) checked = validate_scenario(c);
  if (check == ScenarioCheck::zone_layout) checked = validate_zone_layout(c);
  if (!checked.ok()) {
    checked.notes = r.report.notes;
    throw ScenarioError(std::move(checked));
  }
  out.notes = std::move(r.report.notes);
  return out;
}

LoadedScenario load_scenario(std::string_view bytes, ScenarioCheck check) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the 1-based position of the offending character.
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    auto [line, column] = line_column(bytes, offset);
    std::string what = e.what();
    if (auto pos = what.find("parse error"); pos != std::string::npos) what = what.substr(pos);
    throw ScenarioFormatError(offset, line, column, what);
  }
  return scenario_from_json(doc, check);
}

LoadedScenario load_scenario_file(const std::filesystem::path& path, ScenarioCheck check) {
  return load_scenario(read_text_file(path), check);
}

json scenario_to_json(const ScenarioConfig& c) {
  json doc = json::object();
  doc["version"] = kScenarioFormatVersion;
  doc["name"] = c.name;

  json field = json::object();
  for (const auto& f : kFieldNumbers) field[std::string(f.key)] = c.field.*(f.member);
  doc["field"] = field;

  json physics = json::object();
  for (const auto& f : kPhysicsNumbers) physics[std::string(f.key)] = c.physics.*(f.member);
  physics["enable_noop"] = c.physics.enable_noop;
  doc["physics"] = physics;

  doc["max_steps"] = c.max_steps;

  json teams = json::array();
  for (const TeamConfig& t : c.teams) {
    json tj = json::object();
    tj["id"] = t.id;
    tj["controller"] = std::string(to_string(t.controller));
    if (t.heuristic) {
      json h = json::object();
      for (const auto& f : kHeuristicNumbers) h[std::string(f.key)] = (*t.heuristic).*(f.member);
      const HeuristicParams defaults;
      for (const auto& f : kHeuristicOptionalNumbers) {
        if ((*t.heuristic).*(f.member) != defaults.*(f.member)) h[std::string(f.key)] = (*t.heuristic).*(f.member);
      }
      tj["heuristic"] = h;
    }
    teams.push_back(tj);
  }
  doc["teams"] = teams;

  json units = json::array();
  for (const UnitPlacement& u : c.units) {
    json uj = json::object();
    uj["team"] = u.team;
    uj["position"] = vec2_json(u.position);
    uj["heading_deg"] = u.heading_deg;
    std::optional<UnitSpec> base = u.preset ? find_preset(*u.preset) : std::nullopt;
    if (base) {
      uj["preset"] = base->name;
      json diff = spec_diff_json(u.spec, *base);
      if (!diff.empty()) uj["overrides"] = diff;
    } else {
      uj["spec"] = spec_json(u.spec);
    }
    units.push_back(uj);
  }
  doc["units"] = units;

  json zones = json::array();
  for (const Zone& z : c.zones) {
    json zj = json::object();
    zj["type"] = std::string(to_string(z.type));
    zj["center"] = vec2_json(z.center);
    zj["semi_axes"] = vec2_json(z.semi_axes);
    zj["effect"] = z.effect;
    zones.push_back(zj);
  }
  doc["zones"] = zones;

  doc["max_units"] = c.max_units;
  doc["max_zones"] = c.max_zones;
  return doc;
}

std::string save_scenario(const ScenarioConfig& config) { return canonical_dump(scenario_to_json(config)) + "\n"; }

void save_scenario_file(const ScenarioConfig& config, const std::filesystem::path& path) {
  write_text_file(path, save_scenario(config));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace tabx
