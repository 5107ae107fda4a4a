#include "wbary/reference.hpp"

#include <set>
#include <unordered_set>

#include "wbary/geometry.hpp"
#include "wbary/lp.hpp"
#include "wbary/oracle.hpp"
#include "wbary/rng.hpp"

namespace wbary {

MotSolution brute_mot(const BarycenterInstance& inst, std::uint64_t budget) {
  const BarycenterInstance v = validate_instance(inst);
  const int k = v.k();
  std::uint64_t count = 1;
  for (int i = 0; i < k; ++i) {
    const auto n = static_cast<std::uint64_t>(v.atoms_of(i));
    if (count > budget / n) throw BudgetExceeded("brute_mot: tuple budget exceeded");
    count *= n;
  }

  std::vector<IndexTuple> all;
  all.reserve(count);
  IndexTuple t;
  t.indices.assign(static_cast<std::size_t>(k), 1);
  for (;;) {
    all.push_back(t);
    int i = k - 1;
    while (i >= 0 && t.indices[static_cast<std::size_t>(i)] == v.atoms_of(i)) {
      t.indices[static_cast<std::size_t>(i)] = 1;
      --i;
    }
    if (i < 0) break;
    ++t.indices[static_cast<std::size_t>(i)];
  }

  RestrictedMot rm = build_restricted_mot(all, v);
  LPSolution sol = simplex_solve(rm.lp);
  if (sol.status != LPStatus::optimal)
    throw std::logic_error("brute_mot: dense transport problem must be solvable");

  MotSolution out;
  out.value = sol.value;
  out.potentials = duals_to_potentials(sol, rm, v);
  out.iterations = 1;
  out.columns_generated = static_cast<long>(all.size());
  for (std::size_t c = 0; c < all.size(); ++c)
    if (sol.primal[c].sign() > 0) out.coupling.add(all[c], sol.primal[c]);
  return out;
}

namespace {

// Boundary test: some marginal's minimum power is attained by sites with
// distinct (point, weight) pairs. Such points lie in cell closures only and
// are excluded from the covering claim.
bool on_cell_boundary(const Vec2& y, const BarycenterInstance& inst,
                      const std::vector<std::vector<Rational>>& w) {
  for (int i = 0; i < inst.k(); ++i) {
    const auto& mu = inst.measures[static_cast<std::size_t>(i)];
    const auto& wi = w[static_cast<std::size_t>(i)];
    Rational best;
    std::set<std::pair<Vec2, Rational>> attaining;
    for (int j = 0; j < mu.size(); ++j) {
      Rational p = norm2(mu.atoms[static_cast<std::size_t>(j)] - y) - wi[static_cast<std::size_t>(j)];
      if (j == 0 || p < best) {
        best = std::move(p);
        attaining.clear();
        attaining.emplace(mu.atoms[static_cast<std::size_t>(j)], wi[static_cast<std::size_t>(j)]);
      } else if (p == best) {
        attaining.emplace(mu.atoms[static_cast<std::size_t>(j)], wi[static_cast<std::size_t>(j)]);
      }
    }
    if (attaining.size() > 1) return true;
  }
  return false;
}

}  // namespace

CoverageVerdict coverage_probe(const BarycenterInstance& inst, const DualPotentials& p,
                               int samples, std::uint64_t seed) {
  const BarycenterInstance v = validate_instance(inst);
  const auto w = weights_from_potentials(p, v.weights);
  const SepReport rep = sep_report(p, v);
  std::unordered_set<IndexTuple, IndexTupleHash> enumerated(rep.candidates.begin(),
                                                            rep.candidates.end());

  // Bounding box: instance atoms padded by 1.
  Vec2 lo = v.measures[0].atoms[0];
  Vec2 hi = lo;
  for (const auto& mu : v.measures)
    for (const auto& a : mu.atoms) {
      lo.x = std::min(lo.x, a.x);
      lo.y = std::min(lo.y, a.y);
      hi.x = std::max(hi.x, a.x);
      hi.y = std::max(hi.y, a.y);
    }
  lo = lo - Vec2{Rational(1), Rational(1)};
  hi = hi + Vec2{Rational(1), Rational(1)};
  const Vec2 span = hi - lo;

  Rng rng(seed);
  constexpr std::uint64_t kGrid = 1u << 20;
  CoverageVerdict verdict;
  for (int s = 0; s < samples; ++s) {
    Vec2 y;
    bool interior = false;
    for (int attempt = 0; attempt < 64 && !interior; ++attempt) {
      y = Vec2{lo.x + span.x * rng.unit_rational(kGrid), lo.y + span.y * rng.unit_rational(kGrid)};
      interior = !on_cell_boundary(y, v, w);
      if (!interior) ++verdict.skipped;
    }
    if (!interior) continue;  // pathologically unlucky; never a failure
    ++verdict.checked;
    const IndexTuple t = locate_tuple(y, v, w);
    if (!enumerated.contains(t)) {
      verdict.pass = false;
      verdict.counterexample = "point " + y.str() + " locates to " + t.str() +
                               " which the oracle enumeration missed";
      return verdict;
    }
  }
  return verdict;
}

}  // namespace wbary
