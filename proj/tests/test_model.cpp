#include <doctest.h>

#include <vector>

#include "wbary/model.hpp"
#include "wbary/rng.hpp"

using namespace wbary;

namespace {

DiscreteMeasure measure(std::vector<Vec2> atoms, std::vector<Rational> masses) {
  DiscreteMeasure m;
  m.atoms = std::move(atoms);
  m.masses = std::move(masses);
  return m;
}

IndexTuple tup(std::vector<int> v) { return IndexTuple(std::move(v)); }

}  // namespace

TEST_CASE("marginal of sparse couplings") {
  SparseCoupling p;
  p.add(tup({1, 1}), Rational(1));
  CHECK(marginal(p, 1, std::vector<int>{2, 1}) == std::vector<Rational>{Rational(1), Rational(0)});

  SparseCoupling q;
  q.add(tup({1, 1}), Rational(1, 2));
  q.add(tup({2, 1}), Rational(1, 2));
  CHECK(marginal(q, 2, std::vector<int>{2, 1}) == std::vector<Rational>{Rational(1)});

  CHECK_THROWS_AS(marginal(q, 0, std::vector<int>{2, 1}), std::out_of_range);
  CHECK_THROWS_AS(marginal(q, 3, std::vector<int>{2, 1}), std::out_of_range);
}

TEST_CASE("sparse marginal matches dense brute-force summation") {
  // random sparse tensors over shapes with at most 10^4 entries
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + static_cast<int>(rng.below(3));
    std::vector<int> sizes;
    for (int i = 0; i < k; ++i) sizes.push_back(1 + static_cast<int>(rng.below(4)));

    SparseCoupling P;
    const int entries = 1 + static_cast<int>(rng.below(6));
    for (int e = 0; e < entries; ++e) {
      std::vector<int> idx;
      for (int i = 0; i < k; ++i)
        idx.push_back(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(sizes[i]))));
      P.add(IndexTuple(idx), Rational(1 + static_cast<long>(rng.below(5)), 7));
    }

    for (int i = 1; i <= k; ++i) {
      // dense definition: iterate the full index space
      std::vector<Rational> dense(static_cast<std::size_t>(sizes[i - 1]));
      std::vector<int> odo(static_cast<std::size_t>(k), 1);
      for (;;) {
        IndexTuple t(odo);
        auto it = P.entries.find(t);
        if (it != P.entries.end()) dense[static_cast<std::size_t>(odo[i - 1] - 1)] += it->second;
        int d = k - 1;
        while (d >= 0 && odo[static_cast<std::size_t>(d)] == sizes[d]) odo[static_cast<std::size_t>(d--)] = 1;
        if (d < 0) break;
        ++odo[static_cast<std::size_t>(d)];
      }
      CHECK(marginal(P, i, sizes) == dense);
    }
  }
}

TEST_CASE("feasible coupling has total mass one") {
  SparseCoupling q;
  q.add(tup({1, 1}), Rational(1, 4));
  q.add(tup({1, 2}), Rational(1, 4));
  q.add(tup({2, 2}), Rational(1, 2));
  CHECK(q.total_mass() == Rational(1));
  CHECK(q.support_size() == 3);
  q.add(tup({2, 2}), Rational(-1, 2));  // zero entries disappear
  CHECK(q.support_size() == 2);
}

TEST_CASE("validate_instance strips zero weights and zero masses") {
  BarycenterInstance inst;
  inst.measures = {measure({{0, 0}}, {Rational(1)}), measure({{1, 0}}, {Rational(1)}),
                   measure({{2, 0}}, {Rational(1)})};
  inst.weights = {Rational(1, 2), Rational(1, 2), Rational(0)};
  const BarycenterInstance v = validate_instance(inst);
  CHECK(v.k() == 2);
  CHECK(v.weights == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

  BarycenterInstance inst2;
  inst2.measures = {measure({{0, 0}, {1, 0}, {2, 0}}, {Rational(1, 2), Rational(1, 2), Rational(0)})};
  inst2.weights = {Rational(1)};
  const BarycenterInstance v2 = validate_instance(inst2);
  CHECK(v2.measures[0].size() == 2);
  CHECK(v2.measures[0].atoms == std::vector<Vec2>{{0, 0}, {1, 0}});
}

TEST_CASE("validate_instance rejects inexact sums and negatives") {
  BarycenterInstance inst;
  inst.measures = {measure({{0, 0}, {1, 0}}, {Rational(1, 2), Rational(999, 2000)})};
  inst.weights = {Rational(1)};
  CHECK_THROWS_AS(validate_instance(inst), ValidationError);

  BarycenterInstance neg;
  neg.measures = {measure({{0, 0}, {1, 0}}, {Rational(3, 2), Rational(-1, 2)})};
  neg.weights = {Rational(1)};
  CHECK_THROWS_AS(validate_instance(neg), ValidationError);

  BarycenterInstance badw;
  badw.measures = {measure({{0, 0}}, {Rational(1)})};
  badw.weights = {Rational(1, 2)};
  CHECK_THROWS_AS(validate_instance(badw), ValidationError);

  BarycenterInstance empty;
  CHECK_THROWS_AS(validate_instance(empty), ValidationError);

  BarycenterInstance all_zero;
  all_zero.measures = {measure({{0, 0}}, {Rational(1)})};
  all_zero.weights = {Rational(0)};
  CHECK_THROWS_AS(validate_instance(all_zero), ValidationError);

  BarycenterInstance d3;
  d3.dimension = 3;
  d3.measures = {measure({{0, 0}}, {Rational(1)})};
  d3.weights = {Rational(1)};
  CHECK_THROWS_AS(validate_instance(d3), ValidationError);
}

TEST_CASE("duplicate atoms are allowed at the model layer") {
  BarycenterInstance inst;
  inst.measures = {measure({{0, 0}, {0, 0}}, {Rational(1, 2), Rational(1, 2)})};
  inst.weights = {Rational(1)};
  const BarycenterInstance v = validate_instance(inst);
  CHECK(v.measures[0].size() == 2);
}
