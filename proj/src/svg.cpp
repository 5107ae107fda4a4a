#include "wbary/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wbary {

std::string render_svg(const BarycenterInstance& inst, const DiscreteMeasure& barycenter) {
  double lox = 0, loy = 0, hix = 0, hiy = 0;
  bool first = true;
  auto grow = [&](const Vec2& v) {
    const double x = v.x.to_double();
    const double y = v.y.to_double();
    if (first) {
      lox = hix = x;
      loy = hiy = y;
      first = false;
    } else {
      lox = std::min(lox, x);
      hix = std::max(hix, x);
      loy = std::min(loy, y);
      hiy = std::max(hiy, y);
    }
  };
  for (const auto& mu : inst.measures)
    for (const auto& a : mu.atoms) grow(a);
  for (const auto& a : barycenter.atoms) grow(a);

  const double span = std::max({hix - lox, hiy - loy, 1e-9});
  const double pad = 0.08 * span;
  const double width = 640.0;
  const double sc = width / (span + 2 * pad);
  auto X = [&](const Vec2& v) { return (v.x.to_double() - lox + pad) * sc; };
  // SVG y grows downward
  auto Y = [&](const Vec2& v) { return (hiy - v.y.to_double() + pad) * sc; };

  static const char* palette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00",
                                  "#a65628", "#f781bf", "#999999", "#66c2a5", "#ffd92f"};
  const double height = (hiy - loy + 2 * pad) * sc;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t i = 0; i < inst.measures.size(); ++i) {
    const char* color = palette[i % (sizeof(palette) / sizeof(palette[0]))];
    for (const auto& a : inst.measures[i].atoms)
      out << "  <circle class=\"input\" cx=\"" << X(a) << "\" cy=\"" << Y(a)
          << "\" r=\"3\" fill=\"" << color << "\" fill-opacity=\"0.6\"/>\n";
  }

  double max_mass = 0;
  for (const auto& m : barycenter.masses) max_mass = std::max(max_mass, m.to_double());
  const double rmax = 0.045 * width;
  for (std::size_t j = 0; j < barycenter.atoms.size(); ++j) {
    const double mass = barycenter.masses[j].to_double();
    const double r = max_mass > 0 ? rmax * std::sqrt(mass / max_mass) : rmax;
    out << "  <circle class=\"barycenter\" cx=\"" << X(barycenter.atoms[j]) << "\" cy=\""
        << Y(barycenter.atoms[j]) << "\" r=\"" << r << "\" fill=\"black\" fill-opacity=\"0.85\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace wbary
