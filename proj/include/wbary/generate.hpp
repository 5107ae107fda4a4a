#pragma once

#include <cstdint>
#include <vector>

#include "wbary/model.hpp"

namespace wbary {

// k uniform measures on n points each, coordinates i.i.d. uniform over the
// multiples of 1/denominator in [-1,1]^2, uniform barycenter weights.
// Deterministic for a fixed seed.
BarycenterInstance gen_random(int n, int k, std::uint64_t seed, std::uint64_t denominator);

// One Dirac measure per point, uniform weights.
BarycenterInstance gen_diracs(const std::vector<Vec2>& points);

// Synthetic nested-ellipse rings rasterized on a size x size grid and
// converted to uniform measures over the bright pixels, mapped into
// [-1,1]^2. In the style of the classic ellipse-image benchmarks; not a
// published dataset.
BarycenterInstance gen_ellipses(int size, int k, std::uint64_t seed);

}  // namespace wbary
