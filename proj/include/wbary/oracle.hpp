#pragma once

#include <cstdint>
#include <vector>

#include "wbary/geometry.hpp"
#include "wbary/model.hpp"
#include "wbary/rational.hpp"
#include "wbary/vec2.hpp"

namespace wbary {

// Output of the separation oracle: the tuple minimizing the reduced cost
// C_j - sum_i p_i[j_i], its exact value, and the minimizing barycentric
// witness point y = sum_i lambda_i x_{i,j_i}.
struct SepResult {
  IndexTuple tuple;
  Rational value;
  Vec2 witness;
};

struct SepCandidate {
  IndexTuple tuple;
  Rational value;
};

// Everything the cell enumeration discovers in one pass: the minimizer,
// every tuple with negative reduced cost (most violated first), and the
// full deduplicated candidate set (used by the coverage probe).
struct SepReport {
  SepResult best;
  std::vector<SepCandidate> violated;
  std::vector<IndexTuple> candidates;
  std::size_t facet_lines = 0;
};

// w_i = p_i / lambda_i, componentwise. Throws on nonpositive lambda.
std::vector<std::vector<Rational>> weights_from_potentials(const DualPotentials& p,
                                                           const std::vector<Rational>& lambda);

// Barycentric mean of the tuple's atoms, y = sum_i lambda_i x_{i,j_i}.
Vec2 tuple_mean(const IndexTuple& t, const BarycenterInstance& inst);

// Cost tensor entry C_j = sum_i lambda_i |x_{i,j_i} - y|^2 at y = tuple_mean.
Rational tuple_cost(const IndexTuple& t, const BarycenterInstance& inst);

// Geometric separation oracle: enumerates the nonempty intersections of the
// per-marginal power diagrams by walking the arrangement of their facet
// lines, then minimizes the reduced cost over the enumerated tuples.
SepReport sep_report(const DualPotentials& p, const BarycenterInstance& inst);
SepResult sep(const DualPotentials& p, const BarycenterInstance& inst);

// Exhaustive reference oracle; throws BudgetExceeded if the tuple count
// exceeds the budget.
SepResult sep_bruteforce(const DualPotentials& p, const BarycenterInstance& inst,
                         std::uint64_t budget = 1000000);

}  // namespace wbary
