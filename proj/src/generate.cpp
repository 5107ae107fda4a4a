#include "wbary/generate.hpp"

#include <stdexcept>

#include "wbary/rng.hpp"

namespace wbary {

BarycenterInstance gen_random(int n, int k, std::uint64_t seed, std::uint64_t denominator) {
  if (n < 1 || k < 1 || denominator < 1)
    throw std::invalid_argument("gen_random: n, k, denominator must be positive");
  Rng rng(seed);
  BarycenterInstance inst;
  inst.dimension = 2;
  const Rational mass(1, n);
  for (int i = 0; i < k; ++i) {
    DiscreteMeasure mu;
    for (int j = 0; j < n; ++j) {
      const Rational x = rng.signed_unit_rational(denominator);
      const Rational y = rng.signed_unit_rational(denominator);
      mu.atoms.push_back(Vec2{x, y});
      mu.masses.push_back(mass);
    }
    inst.measures.push_back(std::move(mu));
    inst.weights.push_back(Rational(1, k));
  }
  return inst;
}

BarycenterInstance gen_diracs(const std::vector<Vec2>& points) {
  if (points.empty()) throw std::invalid_argument("gen_diracs: no points");
  BarycenterInstance inst;
  inst.dimension = 2;
  const int k = static_cast<int>(points.size());
  for (const auto& p : points) {
    DiscreteMeasure mu;
    mu.atoms.push_back(p);
    mu.masses.push_back(Rational(1));
    inst.measures.push_back(std::move(mu));
    inst.weights.push_back(Rational(1, k));
  }
  return inst;
}

BarycenterInstance gen_ellipses(int size, int k, std::uint64_t seed) {
  if (size < 4 || k < 1) throw std::invalid_argument("gen_ellipses: size >= 4 and k >= 1 required");
  Rng rng(seed);
  BarycenterInstance inst;
  inst.dimension = 2;

  for (int img = 0; img < k; ++img) {
    // Ring between two concentric axis-aligned ellipses; all tests done in
    // integer arithmetic on a fixed subgrid to stay deterministic.
    const std::int64_t scale = 1000;
    const std::int64_t half = size * scale / 2;
    const std::int64_t cx = half + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(size) * 100)) -
                            size * 50;
    const std::int64_t cy = half + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(size) * 100)) -
                            size * 50;
    const std::int64_t ax_lo = size * scale / 6;
    const std::int64_t ax_hi = size * scale * 45 / 100;
    const std::int64_t ax = ax_lo + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(ax_hi - ax_lo)));
    const std::int64_t ay = ax_lo + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(ax_hi - ax_lo)));
    // inner/outer ratio in [55%, 80%]
    const std::int64_t ratio = 55 + static_cast<std::int64_t>(rng.below(26));

    DiscreteMeasure mu;
    for (int py = 0; py < size; ++py)
      for (int px = 0; px < size; ++px) {
        const std::int64_t qx = (2 * px + 1) * scale / 2 - cx;
        const std::int64_t qy = (2 * py + 1) * scale / 2 - cy;
        // outside the inner ellipse, inside the outer one
        const double ex = static_cast<double>(qx);
        const double ey = static_cast<double>(qy);
        const double outer = (ex * ex) / (static_cast<double>(ax) * ax) +
                             (ey * ey) / (static_cast<double>(ay) * ay);
        const double rr = static_cast<double>(ratio) / 100.0;
        if (outer <= 1.0 && outer >= rr * rr) {
          // pixel center mapped to [-1,1]^2
          mu.atoms.push_back(Vec2{Rational(2 * px + 1 - size, size), Rational(2 * py + 1 - size, size)});
        }
      }
    if (mu.atoms.empty())
      mu.atoms.push_back(Vec2{Rational(0), Rational(0)});
    const Rational mass(1, static_cast<long>(mu.atoms.size()));
    mu.masses.assign(mu.atoms.size(), mass);
    inst.measures.push_back(std::move(mu));
    inst.weights.push_back(Rational(1, k));
  }
  return inst;
}

}  // namespace wbary
