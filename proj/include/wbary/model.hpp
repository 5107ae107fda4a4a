#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wbary/rational.hpp"
#include "wbary/vec2.hpp"

namespace wbary {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Weighted point cloud. Masses are strictly positive and sum to 1 after
// validate_instance; atom lists are never empty.
struct DiscreteMeasure {
  std::vector<Vec2> atoms;
  std::vector<Rational> masses;

  int size() const { return static_cast<int>(atoms.size()); }
};

// The problem input: k measures with strictly positive barycenter weights
// summing to 1. Support sizes may differ per measure.
struct BarycenterInstance {
  int dimension = 2;
  std::vector<DiscreteMeasure> measures;
  std::vector<Rational> weights;

  int k() const { return static_cast<int>(measures.size()); }
  int atoms_of(int i) const { return measures[static_cast<std::size_t>(i)].size(); }
  int total_atoms() const {
    int t = 0;
    for (const auto& m : measures) t += m.size();
    return t;
  }
  // The vertex sparsity bound (sum of n_i) - k + 1.
  int sparsity_bound() const { return total_atoms() - k() + 1; }
};

// Index tuple (j_1, ..., j_k); entries are 1-based, entry i in [n_i].
struct IndexTuple {
  std::vector<int> indices;

  IndexTuple() = default;
  explicit IndexTuple(std::vector<int> idx) : indices(std::move(idx)) {}

  int size() const { return static_cast<int>(indices.size()); }
  int operator[](int i) const { return indices[static_cast<std::size_t>(i)]; }

  friend bool operator==(const IndexTuple& a, const IndexTuple& b) { return a.indices == b.indices; }
  friend bool operator<(const IndexTuple& a, const IndexTuple& b) { return a.indices < b.indices; }

  std::string str() const;
};

struct IndexTupleHash {
  std::size_t operator()(const IndexTuple& t) const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (int v : t.indices) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ull;
    return h;
  }
};

// Sparse MOT primal variable: tuple -> positive mass. Zero entries are
// absent by construction (add() erases them).
struct SparseCoupling {
  std::map<IndexTuple, Rational> entries;

  void add(const IndexTuple& t, const Rational& mass) {
    auto it = entries.find(t);
    if (it == entries.end()) {
      if (!mass.is_zero()) entries.emplace(t, mass);
      return;
    }
    it->second += mass;
    if (it->second.is_zero()) entries.erase(it);
  }

  Rational total_mass() const {
    Rational s;
    for (const auto& [t, m] : entries) s += m;
    return s;
  }

  std::size_t support_size() const { return entries.size(); }
};

// The dual variables p_1, ..., p_k; vector i has length n_i.
struct DualPotentials {
  std::vector<std::vector<Rational>> p;

  static DualPotentials zeros(const BarycenterInstance& inst) {
    DualPotentials d;
    d.p.resize(static_cast<std::size_t>(inst.k()));
    for (int i = 0; i < inst.k(); ++i)
      d.p[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(inst.atoms_of(i)), Rational());
    return d;
  }
};

// i-th marginal of P (i is 1-based); entry l sums P over tuples with j_i = l.
// sizes gives the atom count per marginal. Throws std::out_of_range on bad i.
std::vector<Rational> marginal(const SparseCoupling& P, int i, const std::vector<int>& sizes);
std::vector<Rational> marginal(const SparseCoupling& P, int i, const BarycenterInstance& inst);

// Strips zero-weight measures and zero-mass atoms, then verifies the
// instance invariants exactly. Throws ValidationError on violation.
BarycenterInstance validate_instance(const BarycenterInstance& inst);

}  // namespace wbary
