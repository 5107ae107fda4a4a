#include "wbary/barycenter.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "wbary/lp.hpp"
#include "wbary/oracle.hpp"

namespace wbary {

Pushforward pushforward(const SparseCoupling& P, const BarycenterInstance& inst) {
  Pushforward out;
  std::map<Vec2, int> atom_of_point;
  for (const auto& [t, mass] : P.entries) {
    const Vec2 y = tuple_mean(t, inst);
    auto it = atom_of_point.find(y);
    int idx;
    if (it == atom_of_point.end()) {
      idx = out.measure.size();
      atom_of_point.emplace(y, idx);
      out.measure.atoms.push_back(y);
      out.measure.masses.push_back(mass);
    } else {
      idx = it->second;
      out.measure.masses[static_cast<std::size_t>(idx)] += mass;
    }
    out.atom_map.emplace(t, idx);
  }
  return out;
}

BarycenterSolution solve_exact(const BarycenterInstance& inst, const SolveConfig& config) {
  const BarycenterInstance v = validate_instance(inst);
  BarycenterSolution sol;
  sol.mot = solve_mot(v, config);

  const CertificateVerdict verdict = verify_certificate(sol.mot, v, config);
  if (!verdict.pass) throw std::logic_error("solve_exact: certificate check failed: " + verdict.failure);
  sol.sep_value = verdict.sep_value;

  Pushforward pf = pushforward(sol.mot.coupling, v);
  sol.barycenter = std::move(pf.measure);
  sol.cost = sol.mot.value;

  // Transport map to measure i: barycenter atom -> atom j_i of mu_i, with
  // rows sharing (nu atom, mu atom) merged.
  sol.transport_maps.assign(static_cast<std::size_t>(v.k()), {});
  for (int i = 0; i < v.k(); ++i) {
    std::map<std::pair<int, int>, Rational> rows;
    for (const auto& [t, mass] : sol.mot.coupling.entries)
      rows[{pf.atom_map.at(t), t[i] - 1}] += mass;
    auto& list = sol.transport_maps[static_cast<std::size_t>(i)];
    list.reserve(rows.size());
    for (const auto& [key, mass] : rows) list.push_back(TransportEntry{key.first, key.second, mass});
  }
  return sol;
}

namespace {

// Nearest multiple of step (ties round up), exact.
Rational round_to_grid(const Rational& v, const Rational& step) {
  const Rational q = v / step + Rational(1, 2);
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
  return Rational(f) * step;
}

}  // namespace

QuantizedInstance quantize_instance_detailed(const BarycenterInstance& inst, const Rational& eps) {
  if (eps.sign() <= 0) throw std::invalid_argument("quantize_instance: eps must be positive");
  const BarycenterInstance v = validate_instance(inst);
  const int k = v.k();

  QuantizedInstance q;
  // Translate so the coordinatewise minimum is 0.
  Vec2 mn = v.measures[0].atoms[0];
  for (const auto& mu : v.measures)
    for (const auto& a : mu.atoms) {
      mn.x = std::min(mn.x, a.x);
      mn.y = std::min(mn.y, a.y);
    }
  q.translation = mn;

  Rational r2;
  for (const auto& mu : v.measures)
    for (const auto& a : mu.atoms) r2 = std::max(r2, norm2(a - mn));
  q.radius2 = r2;

  // Coordinate grid eps/(16 k max(1, ceil(sqrt(2 R)))) and weight grid
  // eps/(16 k max(1, ceil(4 R))): coordinate rounding moves each squared
  // distance by O(delta_x sqrt(R)), weight rounding shifts the objective by
  // at most k delta_lambda 4R; both land well inside eps.
  const Rational kr(k);
  Rational mx = std::max(Rational(1), Rational(ceil_sqrt(Rational(2) * r2)));
  Rational ml = std::max(Rational(1), ceil_rational(Rational(4) * r2));
  q.delta_x = eps / (Rational(16) * kr * mx);
  q.delta_lambda = eps / (Rational(16) * kr * ml);

  BarycenterInstance rounded;
  rounded.dimension = 2;
  for (const auto& mu : v.measures) {
    DiscreteMeasure m2;
    m2.masses = mu.masses;
    m2.atoms.reserve(mu.atoms.size());
    for (const auto& a : mu.atoms) {
      const Vec2 t = a - mn;
      m2.atoms.push_back(Vec2{round_to_grid(t.x, q.delta_x) + mn.x,
                              round_to_grid(t.y, q.delta_x) + mn.y});
    }
    rounded.measures.push_back(std::move(m2));
  }

  rounded.weights.reserve(v.weights.size());
  Rational wsum;
  for (const auto& w : v.weights) {
    Rational rw = round_to_grid(w, q.delta_lambda);
    if (rw.sign() < 0) rw = Rational(0);
    wsum += rw;
    rounded.weights.push_back(std::move(rw));
  }
  // The largest weight absorbs the rounding residual so the sum is exactly 1.
  std::size_t largest = 0;
  for (std::size_t i = 1; i < rounded.weights.size(); ++i)
    if (rounded.weights[i] > rounded.weights[largest]) largest = i;
  rounded.weights[largest] += Rational(1) - wsum;
  if (rounded.weights[largest].sign() <= 0)
    throw std::logic_error("quantize_instance: weight renormalization failed");

  q.instance = validate_instance(rounded);  // strips weights rounded to zero
  return q;
}

BarycenterInstance quantize_instance(const BarycenterInstance& inst, const Rational& eps) {
  return quantize_instance_detailed(inst, eps).instance;
}

BarycenterSolution solve_approx(const BarycenterInstance& inst, const Rational& eps,
                                const SolveConfig& config) {
  const QuantizedInstance q = quantize_instance_detailed(inst, eps);
  return solve_exact(q.instance, config);
}

namespace {

LPSolution solve_transport(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  LPSolution sol = simplex_solve(build_transport_lp(mu, nu));
  if (sol.status != LPStatus::optimal)
    throw std::logic_error("ot_cost: transport problem must be solvable");
  return sol;
}

}  // namespace

Rational ot_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  return solve_transport(mu, nu).value;
}

std::vector<PlanEntry> ot_plan(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const LPSolution sol = solve_transport(mu, nu);
  std::vector<PlanEntry> plan;
  const int nn = nu.size();
  for (std::size_t col = 0; col < sol.primal.size(); ++col) {
    if (sol.primal[col].sign() <= 0) continue;
    plan.push_back(PlanEntry{static_cast<int>(col) / nn, static_cast<int>(col) % nn,
                             sol.primal[col]});
  }
  return plan;
}

Rational objective(const DiscreteMeasure& nu, const BarycenterInstance& inst) {
  const BarycenterInstance v = validate_instance(inst);
  Rational acc;
  for (int i = 0; i < v.k(); ++i)
    acc.add_mul(v.weights[static_cast<std::size_t>(i)],
                ot_cost(v.measures[static_cast<std::size_t>(i)], nu));
  return acc;
}

}  // namespace wbary
