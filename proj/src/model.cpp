#include "wbary/model.hpp"

namespace wbary {

std::string IndexTuple::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(indices[i]);
  }
  return s + ")";
}

std::vector<Rational> marginal(const SparseCoupling& P, int i, const std::vector<int>& sizes) {
  if (i < 1 || i > static_cast<int>(sizes.size()))
    throw std::out_of_range("marginal: index " + std::to_string(i) + " out of range");
  std::vector<Rational> m(static_cast<std::size_t>(sizes[static_cast<std::size_t>(i - 1)]));
  for (const auto& [t, mass] : P.entries) {
    const int j = t[i - 1];
    if (j < 1 || j > sizes[static_cast<std::size_t>(i - 1)])
      throw std::out_of_range("marginal: tuple entry out of range in " + t.str());
    m[static_cast<std::size_t>(j - 1)] += mass;
  }
  return m;
}

std::vector<Rational> marginal(const SparseCoupling& P, int i, const BarycenterInstance& inst) {
  std::vector<int> sizes;
  sizes.reserve(static_cast<std::size_t>(inst.k()));
  for (const auto& mu : inst.measures) sizes.push_back(mu.size());
  return marginal(P, i, sizes);
}

BarycenterInstance validate_instance(const BarycenterInstance& inst) {
  if (inst.dimension != 2)
    throw ValidationError("validate_instance: only dimension 2 is supported");
  if (inst.measures.empty()) throw ValidationError("validate_instance: no measures");
  if (inst.measures.size() != inst.weights.size())
    throw ValidationError("validate_instance: weights/measures length mismatch");

  Rational wsum;
  for (const auto& w : inst.weights) {
    if (w.sign() < 0) throw ValidationError("validate_instance: negative weight " + w.str());
    wsum += w;
  }
  if (!(wsum == Rational(1)))
    throw ValidationError("validate_instance: weights sum to " + wsum.str() + ", expected 1");

  BarycenterInstance out;
  out.dimension = 2;
  for (std::size_t i = 0; i < inst.measures.size(); ++i) {
    if (inst.weights[i].is_zero()) continue;  // zero-weight measure is stripped

    const DiscreteMeasure& mu = inst.measures[i];
    if (mu.atoms.empty()) throw ValidationError("validate_instance: measure with no atoms");
    if (mu.atoms.size() != mu.masses.size())
      throw ValidationError("validate_instance: atoms/masses length mismatch");

    Rational msum;
    for (const auto& m : mu.masses) {
      if (m.sign() < 0) throw ValidationError("validate_instance: negative mass " + m.str());
      msum += m;
    }
    if (!(msum == Rational(1)))
      throw ValidationError("validate_instance: masses sum to " + msum.str() + ", expected 1");

    DiscreteMeasure kept;
    for (std::size_t j = 0; j < mu.atoms.size(); ++j) {
      if (mu.masses[j].is_zero()) continue;  // zero-mass atom is stripped
      kept.atoms.push_back(mu.atoms[j]);
      kept.masses.push_back(mu.masses[j]);
    }
    out.measures.push_back(std::move(kept));
    out.weights.push_back(inst.weights[i]);
  }
  if (out.measures.empty())
    throw ValidationError("validate_instance: empty instance after stripping zero weights");
  return out;
}

}  // namespace wbary
