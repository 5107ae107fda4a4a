#pragma once

#include <string>

#include "wbary/model.hpp"

namespace wbary {

// SVG of the input atoms (one color per measure) and the barycenter atoms as
// black disks with area proportional to mass. Coordinates go through double
// here only; the exact data lives in the JSON files.
std::string render_svg(const BarycenterInstance& inst, const DiscreteMeasure& barycenter);

}  // namespace wbary
