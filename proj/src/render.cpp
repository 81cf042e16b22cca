#include "glimca/render.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "glimca/error.hpp"

namespace glimca {

RenderFormat parse_render_format(std::string_view name) {
  if (name == "text") return RenderFormat::Text;
  if (name == "csv") return RenderFormat::Csv;
  if (name == "pnm") return RenderFormat::Pnm;
  throw ParseError("unknown output format '" + std::string(name) + "' (text|csv|pnm)");
}

namespace {

std::array<unsigned char, 3> palette(Symbol s) {
  if (s == 0) return {255, 255, 255};
  if (s == 1) return {0, 0, 0};
  // Golden-ratio hue walk; stable for a given index.
  const double h = std::fmod(0.618033988749895 * s, 1.0) * 6.0;
  const int sector = static_cast<int>(h);
  const double f = h - sector;
  const auto hi = static_cast<unsigned char>(230), lo = static_cast<unsigned char>(40);
  const auto up = static_cast<unsigned char>(40 + 190 * f), down = static_cast<unsigned char>(230 - 190 * f);
  switch (sector % 6) {
    case 0: return {hi, up, lo};
    case 1: return {down, hi, lo};
    case 2: return {lo, hi, up};
    case 3: return {lo, down, hi};
    case 4: return {up, lo, hi};
    default: return {hi, lo, down};
  }
}

}  // namespace

std::string render(const SpacetimeDiagram& d, RenderFormat format) {
  std::ostringstream out;
  const std::size_t width = d.width();
  switch (format) {
    case RenderFormat::Text:
      for (std::size_t t = 0; t < d.rows.size(); ++t) {
        for (std::size_t j = 0; j < width; ++j) {
          if (!d.determined[t][j]) {
            out << '?';
          } else if (d.alphabet.single_char()) {
            out << d.alphabet.name(d.rows[t][j]);
          } else {
            out << '[' << d.alphabet.name(d.rows[t][j]) << ']';
          }
        }
        out << '\n';
      }
      break;
    case RenderFormat::Csv:
      out << "t,pos,symbol\n";
      for (std::size_t t = 0; t < d.rows.size(); ++t)
        for (std::size_t j = 0; j < width; ++j)
          if (d.determined[t][j])
            out << t << ',' << d.first + static_cast<std::int64_t>(j) << ',' << d.alphabet.name(d.rows[t][j])
                << '\n';
      break;
    case RenderFormat::Pnm:
      out << "P6\n" << width << ' ' << d.rows.size() << "\n255\n";
      for (std::size_t t = 0; t < d.rows.size(); ++t)
        for (std::size_t j = 0; j < width; ++j) {
          std::array<unsigned char, 3> rgb{128, 128, 128};
          if (d.determined[t][j]) rgb = palette(d.rows[t][j]);
          out.write(reinterpret_cast<const char*>(rgb.data()), 3);
        }
      break;
  }
  return out.str();
}

}  // namespace glimca
