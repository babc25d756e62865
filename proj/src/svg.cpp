#include <cmath>
#include <cstdio>
#include <numbers>

#include "tabx/scenario_io.hpp"
#include "tabx/svg.hpp"

namespace tabx {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

const char* zone_fill(ZoneType type) {
  switch (type) {
    case ZoneType::lava: return "#e4572e";
    case ZoneType::bush: return "#3c9d4e";
    case ZoneType::swamp: return "#6d8a96";
    default: return "none";
  }
}

}  // namespace

std::string render_svg(const EnvState& state, double scale) {
  const FieldSpec& f = state.config->field;
  const double w = f.width * scale;
  const double h = f.height * scale;
  auto sx = [&](double x) { return num(x * scale); };
  auto sy = [&](double y) { return num(h - y * scale); };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
                    "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#f4f1e8\" stroke=\"#333\"/>\n";
  svg += "<text x=\"4\" y=\"14\" font-size=\"12\" font-family=\"monospace\">t=" + std::to_string(state.t) + "</text>\n";

  for (const Zone& z : state.zones) {
    if (z.type == ZoneType::inactive) continue;
    svg += "<ellipse cx=\"" + sx(z.center.x) + "\" cy=\"" + sy(z.center.y) + "\" rx=\"" + num(z.semi_axes.x * scale) +
           "\" ry=\"" + num(z.semi_axes.y * scale) + "\" fill=\"" + zone_fill(z.type) + "\" fill-opacity=\"0.45\"/>\n";
  }

  for (const UnitState& u : state.units) {
    if (!u.active || !u.alive) continue;
    const double half = u.spec.sight_angle / 2.0;
    const double r = u.spec.sight_range;
    const char* tint = u.team == kAllyTeam ? "#2f6bd8" : "#d83a2f";
    if (u.spec.sight_angle >= 2.0 * std::numbers::pi) {
      svg += "<circle cx=\"" + sx(u.position.x) + "\" cy=\"" + sy(u.position.y) + "\" r=\"" + num(r * scale) +
             "\" fill=\"" + tint + "\" fill-opacity=\"0.08\"/>\n";
      continue;
    }
    const Vec2 a = u.position + heading_vector(u.heading - half) * r;
    const Vec2 b = u.position + heading_vector(u.heading + half) * r;
    const int large = u.spec.sight_angle > std::numbers::pi ? 1 : 0;
    svg += "<path d=\"M" + sx(u.position.x) + " " + sy(u.position.y) + " L" + sx(a.x) + " " + sy(a.y) + " A" +
           num(r * scale) + " " + num(r * scale) + " 0 " + std::to_string(large) + " 0 " + sx(b.x) + " " + sy(b.y) +
           " Z\" fill=\"" + tint + "\" fill-opacity=\"0.08\"/>\n";
  }

  for (const UnitState& u : state.units) {
    if (!u.active) continue;
    const char* stroke = u.team == kAllyTeam ? "#2f6bd8" : "#d83a2f";
    const char* fill = u.alive ? stroke : "#999";
    svg += "<circle cx=\"" + sx(u.position.x) + "\" cy=\"" + sy(u.position.y) + "\" r=\"" +
           num(u.spec.body_radius * scale) + "\" fill=\"" + fill + "\" fill-opacity=\"0.6\" stroke=\"" + stroke +
           "\"/>\n";
    if (!u.alive) continue;
    const Vec2 tip = u.position + heading_vector(u.heading) * (u.spec.body_radius * 1.6);
    svg += "<line x1=\"" + sx(u.position.x) + "\" y1=\"" + sy(u.position.y) + "\" x2=\"" + sx(tip.x) + "\" y2=\"" +
           sy(tip.y) + "\" stroke=\"#111\" stroke-width=\"2\"/>\n";
    const double ratio = u.health / u.spec.max_health;
    const double bw = 2.0 * u.spec.body_radius * scale;
    const double top = h - (u.position.y + u.spec.body_radius) * scale - 6.0;
    const double left = (u.position.x - u.spec.body_radius) * scale;
    svg += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(bw * ratio) +
           "\" height=\"3\" fill=\"#2a2\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_svg_frame(const std::filesystem::path& dir, const EnvState& state) {
  char name[32];
  std::snprintf(name, sizeof name, "frame_%04d.svg", state.t);
  write_text_file(dir / name, render_svg(state));
}

}  // namespace tabx
