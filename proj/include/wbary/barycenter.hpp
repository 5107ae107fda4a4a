#pragma once

#include <utility>
#include <vector>

#include "wbary/colgen.hpp"
#include "wbary/model.hpp"

namespace wbary {

// One assignment row of a transport map: the barycenter atom nu_atom sends
// `mass` to atom mu_atom of the corresponding input measure. Indices are
// 0-based here and 1-based in the JSON output.
struct TransportEntry {
  int nu_atom = 0;
  int mu_atom = 0;
  Rational mass;
};

struct BarycenterSolution {
  DiscreteMeasure barycenter;
  Rational cost;
  std::vector<std::vector<TransportEntry>> transport_maps;  // one list per measure
  MotSolution mot;
  Rational sep_value;  // fresh oracle value from the certificate recheck, >= 0
};

// Pushforward of a coupling under (X_1,...,X_k) -> sum_i lambda_i X_i.
// Tuples with exactly equal mean points merge; atom_map records the merge.
struct Pushforward {
  DiscreteMeasure measure;
  std::map<IndexTuple, int> atom_map;  // tuple -> 0-based barycenter atom
};
Pushforward pushforward(const SparseCoupling& P, const BarycenterInstance& inst);

// Exact optimal barycenter via the multimarginal LP; the certificate is
// re-verified before returning.
BarycenterSolution solve_exact(const BarycenterInstance& inst, const SolveConfig& config = {});

// Grid rounding that preserves the objective pointwise within eps.
struct QuantizedInstance {
  BarycenterInstance instance;
  Rational delta_x;       // coordinate grid step
  Rational delta_lambda;  // weight grid step
  Vec2 translation;       // subtracted before rounding, added back after
  Rational radius2;       // max squared atom norm after translation
};
QuantizedInstance quantize_instance_detailed(const BarycenterInstance& inst, const Rational& eps);
BarycenterInstance quantize_instance(const BarycenterInstance& inst, const Rational& eps);

// Exact solve of the quantized instance; objective within eps of optimal.
BarycenterSolution solve_approx(const BarycenterInstance& inst, const Rational& eps,
                                const SolveConfig& config = {});

// Exact squared 2-Wasserstein distance via the two-marginal transport LP.
Rational ot_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// The optimal plan behind ot_cost: entries (mu atom, nu atom, mass) of a
// vertex solution.
struct PlanEntry {
  int mu_atom = 0;
  int nu_atom = 0;
  Rational mass;
};
std::vector<PlanEntry> ot_plan(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// The barycenter objective sum_i lambda_i W(mu_i, nu), exact.
Rational objective(const DiscreteMeasure& nu, const BarycenterInstance& inst);

}  // namespace wbary
