#include "wbary/colgen.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <set>
#include <stdexcept>

namespace wbary {

std::pair<std::vector<IndexTuple>, SparseCoupling> initial_tuple_set(const BarycenterInstance& inst) {
  const int k = inst.k();
  std::vector<int> frontier(static_cast<std::size_t>(k), 1);
  std::vector<Rational> residual(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    residual[static_cast<std::size_t>(i)] = inst.measures[static_cast<std::size_t>(i)].masses[0];

  std::vector<IndexTuple> S;
  SparseCoupling P;
  for (;;) {
    IndexTuple t(frontier);
    Rational step = residual[0];
    for (int i = 1; i < k; ++i) step = std::min(step, residual[static_cast<std::size_t>(i)]);
    S.push_back(t);
    P.add(t, step);

    bool done = false;
    for (int i = 0; i < k; ++i) {
      auto& r = residual[static_cast<std::size_t>(i)];
      r -= step;
      if (!r.is_zero()) continue;
      // advance every marginal whose residual hit zero
      if (frontier[static_cast<std::size_t>(i)] == inst.atoms_of(i)) {
        done = true;  // all residual mass is spent simultaneously at the end
        continue;
      }
      ++frontier[static_cast<std::size_t>(i)];
      r = inst.measures[static_cast<std::size_t>(i)]
              .masses[static_cast<std::size_t>(frontier[static_cast<std::size_t>(i)] - 1)];
    }
    if (done) break;
  }
  return {std::move(S), std::move(P)};
}

namespace {

std::uint64_t tuple_space_size(const BarycenterInstance& inst, std::uint64_t cap) {
  std::uint64_t prod = 1;
  for (int i = 0; i < inst.k(); ++i) {
    const auto n = static_cast<std::uint64_t>(inst.atoms_of(i));
    if (prod > cap / n) return cap;
    prod *= n;
  }
  return prod;
}

std::vector<std::pair<int, Rational>> tuple_column(const IndexTuple& t, const RestrictedMot& rm) {
  std::vector<std::pair<int, Rational>> col;
  col.reserve(static_cast<std::size_t>(t.size()));
  for (int i = 0; i < t.size(); ++i) col.emplace_back(rm.row_of(i, t[i] - 1), Rational(1));
  return col;
}

// --- column priming -------------------------------------------------------

// Keeps the heaviest atoms and renormalizes to total mass 1, exactly.
DiscreteMeasure truncate_measure(std::vector<std::pair<Vec2, Rational>> atoms, int max_atoms) {
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const auto& a, const auto& b) { return b.second < a.second; });
  if (static_cast<int>(atoms.size()) > max_atoms) atoms.resize(static_cast<std::size_t>(max_atoms));
  Rational kept;
  for (const auto& [pt, m] : atoms) kept += m;
  DiscreteMeasure nu;
  for (auto& [pt, m] : atoms) {
    if (m.is_zero()) continue;
    nu.atoms.push_back(pt);
    nu.masses.push_back(m / kept);
  }
  return nu;
}

// Target measure for the priming pass: the pushforward of the current
// coupling, truncated to its heaviest atoms, blended 7:1 with the witness
// points of the most violated tuples, renormalized exactly.
DiscreteMeasure priming_target(const SparseCoupling& P, const BarycenterInstance& inst,
                               const std::vector<Vec2>& witnesses, int max_atoms) {
  std::map<Vec2, Rational> mass;
  for (const auto& [t, m] : P.entries) mass[tuple_mean(t, inst)] += m;
  const DiscreteMeasure base =
      truncate_measure({mass.begin(), mass.end()}, max_atoms);

  std::map<Vec2, Rational> blended;
  for (int j = 0; j < base.size(); ++j)
    blended[base.atoms[static_cast<std::size_t>(j)]] =
        base.masses[static_cast<std::size_t>(j)] * Rational(7, 8);
  if (witnesses.empty()) {
    for (auto& [pt, m] : blended) m = m * Rational(8, 7);
  } else {
    const Rational share = Rational(1, 8) / Rational(static_cast<long>(witnesses.size()));
    for (const auto& w : witnesses) blended[w] += share;
  }

  DiscreteMeasure nu;
  for (auto& [pt, m] : blended) {
    if (m.is_zero()) continue;
    nu.atoms.push_back(pt);
    nu.masses.push_back(m);
  }
  return nu;
}

// One alternation round: optimal transport of every mu_i onto nu, then a
// complete feasible gluing: per nu atom the k conditional distributions are
// coupled by the greedy northwest-corner rule, which keeps the support
// linear in size while matching the two-stage cost of the plans.
struct GlueResult {
  std::vector<std::pair<IndexTuple, Rational>> tuples;
  DiscreteMeasure next_target;
};

GlueResult glue_onto(const DiscreteMeasure& nu, const BarycenterInstance& inst) {
  const int k = inst.k();
  const int ny = nu.size();
  // partners[i][y]: (mu_i atom, carried mass) pairs; per y they sum to nu(y)
  std::vector<std::vector<std::vector<std::pair<int, Rational>>>> partners(
      static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    partners[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(ny), {});
    const LPSolution plan = simplex_solve(build_transport_lp(inst.measures[static_cast<std::size_t>(i)], nu));
    if (plan.status != LPStatus::optimal)
      throw std::logic_error("glue_onto: transport subproblem must be solvable");
    for (std::size_t col = 0; col < plan.primal.size(); ++col) {
      if (plan.primal[col].sign() <= 0) continue;
      const int a = static_cast<int>(col) / ny;
      const int y = static_cast<int>(col) % ny;
      partners[static_cast<std::size_t>(i)][static_cast<std::size_t>(y)].emplace_back(a, plan.primal[col]);
    }
  }

  GlueResult out;
  std::map<Vec2, Rational> next_mass;
  for (int y = 0; y < ny; ++y) {
    std::vector<std::size_t> frontier(static_cast<std::size_t>(k), 0);
    std::vector<Rational> residual(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
      residual[static_cast<std::size_t>(i)] =
          partners[static_cast<std::size_t>(i)][static_cast<std::size_t>(y)][0].second;
    for (;;) {
      IndexTuple t;
      t.indices.resize(static_cast<std::size_t>(k));
      Rational step = residual[0];
      for (int i = 1; i < k; ++i) step = std::min(step, residual[static_cast<std::size_t>(i)]);
      for (int i = 0; i < k; ++i)
        t.indices[static_cast<std::size_t>(i)] =
            partners[static_cast<std::size_t>(i)][static_cast<std::size_t>(y)]
                    [frontier[static_cast<std::size_t>(i)]].first + 1;
      next_mass[tuple_mean(t, inst)] += step;
      out.tuples.emplace_back(std::move(t), step);

      bool done = false;
      for (int i = 0; i < k; ++i) {
        auto& r = residual[static_cast<std::size_t>(i)];
        r -= step;
        if (!r.is_zero()) continue;
        auto& f = frontier[static_cast<std::size_t>(i)];
        const auto& list = partners[static_cast<std::size_t>(i)][static_cast<std::size_t>(y)];
        if (f + 1 == list.size()) {
          done = true;
          continue;
        }
        ++f;
        r = list[f].second;
      }
      if (done) break;
    }
  }

  for (auto& [pt, m] : next_mass) {
    out.next_target.atoms.push_back(pt);
    out.next_target.masses.push_back(m);
  }
  return out;
}

}  // namespace

MotSolution solve_mot(const BarycenterInstance& inst, const SolveConfig& config) {
  const BarycenterInstance v = validate_instance(inst);

  auto [S, seed] = initial_tuple_set(v);
  std::set<IndexTuple> members(S.begin(), S.end());

  const std::uint64_t max_iter =
      config.max_iterations > 0 ? config.max_iterations : tuple_space_size(v, 1000000);

  RestrictedMot rm = build_restricted_mot(S, v);
  auto session = std::make_unique<SimplexSession>(rm.lp);
  if (session->solve() != LPStatus::optimal)
    throw std::logic_error("solve_mot: restricted problem must be solvable from the greedy seed");

  MotSolution out;
  int iteration = 0;
  long generated = 0;
  Rational previous_value;
  bool have_previous = false;
  for (;;) {
    ++iteration;
    if (static_cast<std::uint64_t>(iteration) > max_iter)
      throw std::logic_error("solve_mot: iteration cap exceeded");

    LPSolution sol = session->extract();
    DualPotentials pot = duals_to_potentials(sol, rm, v);

    SepResult best;
    std::vector<SepCandidate> batch;
    if (config.use_geometric_oracle) {
      SepReport rep = sep_report(pot, v);
      best = std::move(rep.best);
      batch = std::move(rep.violated);
    } else {
      best = sep_bruteforce(pot, v, config.bruteforce_budget);
      if (best.value.sign() < 0) batch.push_back(SepCandidate{best.tuple, best.value});
    }

    if (config.progress) {
      IterationRecord rec;
      rec.iteration = iteration;
      rec.active_columns = S.size();
      rec.restricted_value = sol.value;
      rec.sep_value = best.value;
      rec.restricted_value_approx = sol.value.to_double();
      rec.sep_value_approx = best.value.to_double();
      config.progress(rec);
    }

    if (best.value.sign() >= 0) {
      // Dual feasible on the full tuple set: the restricted vertex is optimal.
      out.potentials = std::move(pot);
      out.value = sol.value;
      out.iterations = iteration;
      out.columns_generated = generated;
      for (std::size_t c = 0; c < rm.columns.size(); ++c)
        if (sol.primal[c].sign() > 0) out.coupling.add(rm.columns[c], sol.primal[c]);
      return out;
    }

    // The oracle's tuples first: these must all be new (restricted dual
    // feasibility holds on S), which doubles as the termination argument.
    if (static_cast<int>(batch.size()) > config.batch_size) batch.resize(static_cast<std::size_t>(config.batch_size));
    for (const auto& cand : batch) {
      if (!members.insert(cand.tuple).second)
        throw std::logic_error("solve_mot: oracle returned a tuple already in S: " + cand.tuple.str());
      S.push_back(cand.tuple);
      ++generated;
    }

    // Priming pass whenever the master made no primal progress.
    const bool stalled = !have_previous || !(sol.value < previous_value);
    previous_value = sol.value;
    have_previous = true;
    if (config.prime_columns && stalled) {
      SparseCoupling current;
      for (std::size_t c = 0; c < rm.columns.size(); ++c)
        if (sol.primal[c].sign() > 0) current.add(rm.columns[c], sol.primal[c]);
      std::vector<Vec2> witnesses;
      for (const auto& cand : batch) {
        if (static_cast<int>(witnesses.size()) >= config.prime_witnesses) break;
        witnesses.push_back(tuple_mean(cand.tuple, v));
      }
      DiscreteMeasure target = priming_target(current, v, witnesses, config.prime_target_atoms);
      for (int round = 0; round < config.prime_rounds && target.size() > 0; ++round) {
        GlueResult glue = glue_onto(target, v);
        for (const auto& [t, mass] : glue.tuples) {
          if (!members.insert(t).second) continue;
          S.push_back(t);
        }
        std::vector<std::pair<Vec2, Rational>> next(glue.next_target.atoms.size());
        for (std::size_t j = 0; j < next.size(); ++j)
          next[j] = {glue.next_target.atoms[j], glue.next_target.masses[j]};
        target = truncate_measure(std::move(next), config.prime_target_atoms);
      }
    }

    if (config.warm_start) {
      for (std::size_t c = rm.columns.size(); c < S.size(); ++c) {
        rm.columns.push_back(S[c]);
        session->add_column(tuple_cost(S[c], v), tuple_column(S[c], rm));
      }
      if (session->reoptimize() != LPStatus::optimal)
        throw std::logic_error("solve_mot: restricted problem became unsolvable");
    } else {
      rm = build_restricted_mot(S, v);
      session = std::make_unique<SimplexSession>(rm.lp);
      if (session->solve() != LPStatus::optimal)
        throw std::logic_error("solve_mot: restricted problem became unsolvable");
    }
  }
}

CertificateVerdict verify_certificate(const MotSolution& sol, const BarycenterInstance& inst,
                                      const SolveConfig& config) {
  CertificateVerdict verdict;
  const BarycenterInstance v = validate_instance(inst);

  for (int i = 1; i <= v.k(); ++i) {
    const auto got = marginal(sol.coupling, i, v);
    const auto& want = v.measures[static_cast<std::size_t>(i - 1)].masses;
    if (got != want) {
      verdict.pass = false;
      verdict.failure = "marginal " + std::to_string(i) + " does not match the input measure";
      return verdict;
    }
  }

  Rational primal;
  for (const auto& [t, mass] : sol.coupling.entries) primal.add_mul(mass, tuple_cost(t, v));
  if (!(primal == sol.value)) {
    verdict.pass = false;
    verdict.failure = "primal value mismatch: recomputed " + primal.str() + " vs " + sol.value.str();
    return verdict;
  }

  Rational dual_value;
  for (int i = 0; i < v.k(); ++i)
    dual_value += dot(sol.potentials.p[static_cast<std::size_t>(i)],
                      v.measures[static_cast<std::size_t>(i)].masses);
  if (!(dual_value == sol.value)) {
    verdict.pass = false;
    verdict.failure = "duality gap nonzero: dual " + dual_value.str() + " vs primal " + sol.value.str();
    return verdict;
  }

  SepResult fresh = config.use_geometric_oracle
                        ? sep(sol.potentials, v)
                        : sep_bruteforce(sol.potentials, v, config.bruteforce_budget);
  verdict.sep_value = fresh.value;
  if (fresh.value.sign() < 0) {
    verdict.pass = false;
    verdict.failure = "potentials violate dual feasibility: sep = " + fresh.value.str() + " at " +
                      fresh.tuple.str();
    return verdict;
  }
  return verdict;
}

}  // namespace wbary
