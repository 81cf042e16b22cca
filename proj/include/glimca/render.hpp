#pragma once

#include <string>

#include "glimca/engine.hpp"

namespace glimca {

enum class RenderFormat { Text, Csv, Pnm };

RenderFormat parse_render_format(std::string_view name);

/// Text: one row per time step, one character per cell (or "[name]" when the
/// alphabet has multi-character names; '?' for undetermined cells).
/// Csv: header "t,pos,symbol" then one line per determined cell.
/// Pnm: binary P6 pixmap, one pixel per cell, palette derived from symbol index.
std::string render(const SpacetimeDiagram& diagram, RenderFormat format);

}  // namespace glimca
