#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wbary/lp.hpp"
#include "wbary/model.hpp"
#include "wbary/oracle.hpp"

namespace wbary {

// Exact vertex solution of the multimarginal transport LP with its dual
// certificate: <coupling, C> equals sum_i <p_i, mu_i> and sep(potentials)
// is nonnegative over the full tuple set.
struct MotSolution {
  SparseCoupling coupling;
  DualPotentials potentials;
  Rational value;
  int iterations = 0;
  long columns_generated = 0;
};

struct IterationRecord {
  int iteration = 0;
  std::size_t active_columns = 0;
  Rational restricted_value;
  Rational sep_value;
  double restricted_value_approx = 0.0;
  double sep_value_approx = 0.0;
};

struct SolveConfig {
  bool use_geometric_oracle = true;  // false: exhaustive oracle (budgeted)
  int batch_size = 50;               // violated columns added per iteration
  bool warm_start = true;            // keep the simplex basis across iterations
  std::uint64_t bruteforce_budget = 1000000;
  std::uint64_t max_iterations = 0;  // 0: product of the n_i, capped at 1e6
  std::function<void(const IterationRecord&)> progress;

  // Column priming. At k >= 3, tuples added one by one can strand: the
  // restricted polytope stays a single point because no mass exchange exists
  // inside S, and the huge dual optimal face stalls the cut loop. Priming
  // injects the support of a glued heuristic coupling (per-measure optimal
  // transport onto the current pushforward blended with oracle witnesses)
  // whenever the restricted value fails to improve. Injected tuples are
  // ordinary primal columns; termination and exactness still rest on the
  // separation oracle alone.
  bool prime_columns = true;
  int prime_witnesses = 8;    // violated witnesses blended into the target
  int prime_rounds = 2;       // alternation rounds per priming pass
  int prime_target_atoms = 40;  // cap on the target measure's support
};

// Feasibility seed: greedy multimarginal northwest-corner coupling. The
// support has at most (sum_i n_i) - k + 1 tuples.
std::pair<std::vector<IndexTuple>, SparseCoupling> initial_tuple_set(const BarycenterInstance& inst);

// Column generation on (MOT_S): solve the restricted LP, price with the
// separation oracle, add violated tuples until none exist.
MotSolution solve_mot(const BarycenterInstance& inst, const SolveConfig& config = {});

struct CertificateVerdict {
  bool pass = true;
  std::string failure;  // first violated check, empty when pass
  Rational sep_value;   // value of the fresh oracle call
};

// Independent recheck: exact marginals, primal value recomputed from tuple
// costs, zero duality gap, and a fresh separation call that stays >= 0.
CertificateVerdict verify_certificate(const MotSolution& sol, const BarycenterInstance& inst,
                                      const SolveConfig& config = {});

}  // namespace wbary
