#pragma once

// Static SVG frames: field, zones, unit bodies, headings and FoV wedges.

#include <filesystem>
#include <string>

#include "tabx/environment.hpp"

namespace tabx {

/// World +y points up in the image. scale is pixels per world unit.
std::string render_svg(const EnvState& state, double scale = 16.0);

/// Writes dir/frame_<t>.svg with t zero-padded to four digits.
void write_svg_frame(const std::filesystem::path& dir, const EnvState& state);

}  // namespace tabx
