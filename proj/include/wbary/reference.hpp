#pragma once

#include <cstdint>
#include <string>

#include "wbary/colgen.hpp"
#include "wbary/model.hpp"

namespace wbary {

// Dense multimarginal LP over every tuple; the primary correctness oracle
// for tests and acceptance. Throws BudgetExceeded when the tuple count
// exceeds the budget.
MotSolution brute_mot(const BarycenterInstance& inst, std::uint64_t budget = 10000);

struct CoverageVerdict {
  bool pass = true;
  std::string counterexample;  // offending sample point, empty when pass
  int checked = 0;
  int skipped = 0;  // samples that landed exactly on a facet line (boundary)
};

// Samples random rational points in the instance's bounding box and checks
// that every located tuple appears among the tuples the oracle's cell
// enumeration produced for the same potentials. Boundary samples (exactly on
// a facet line) belong to cell closures and are resampled.
CoverageVerdict coverage_probe(const BarycenterInstance& inst, const DualPotentials& p,
                               int samples, std::uint64_t seed);

}  // namespace wbary
