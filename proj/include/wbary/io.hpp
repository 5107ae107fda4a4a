#pragma once

#include <string>

#include "wbary/barycenter.hpp"
#include "wbary/model.hpp"

namespace wbary {

struct IOError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Instance JSON: {"dimension": 2, "weights": [...], "measures":
// [{"atoms": [["x","y"],...], "masses": [...]}, ...]} with every rational
// serialized as an exact "p/q" string (decimals accepted on input).
BarycenterInstance parse_instance_json(const std::string& text);
BarycenterInstance load_instance(const std::string& path);
std::string instance_to_json(const BarycenterInstance& inst);
void save_instance(const BarycenterInstance& inst, const std::string& path);

// Extra solve metadata carried into the solution file.
struct SolveStats {
  double wall_time_s = 0.0;
  bool approx = false;
  std::string eps;           // requested accuracy, exact string (approx only)
  std::string delta_x;       // quantization steps (approx only)
  std::string delta_lambda;
};

std::string solution_to_json(const BarycenterSolution& sol, const Rational& sep_value,
                             const SolveStats& stats);
void save_solution(const BarycenterSolution& sol, const Rational& sep_value,
                   const SolveStats& stats, const std::string& path);

// Reads back the barycenter measure and cost of a solution file (used by the
// render command and tests).
struct LoadedSolution {
  DiscreteMeasure barycenter;
  Rational cost;
};
LoadedSolution load_solution(const std::string& path);

}  // namespace wbary
