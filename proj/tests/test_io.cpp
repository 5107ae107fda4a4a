#include <doctest.h>

#include "wbary/barycenter.hpp"
#include "wbary/generate.hpp"
#include "wbary/io.hpp"

using namespace wbary;

TEST_CASE("instance JSON round trip") {
  const BarycenterInstance inst = gen_random(3, 2, 5, 100);
  const std::string text = instance_to_json(inst);
  const BarycenterInstance back = parse_instance_json(text);
  CHECK(back.dimension == inst.dimension);
  REQUIRE(back.k() == inst.k());
  CHECK(back.weights == inst.weights);
  for (int i = 0; i < inst.k(); ++i) {
    CHECK(back.measures[static_cast<std::size_t>(i)].atoms ==
          inst.measures[static_cast<std::size_t>(i)].atoms);
    CHECK(back.measures[static_cast<std::size_t>(i)].masses ==
          inst.measures[static_cast<std::size_t>(i)].masses);
  }
  // canonical writers are deterministic
  CHECK(instance_to_json(back) == text);
}

TEST_CASE("instance JSON accepts decimal strings and plain integers") {
  const std::string text = R"({
    "dimension": 2,
    "weights": ["0.5", "1/2"],
    "measures": [
      {"atoms": [["0", "0"]], "masses": [1]},
      {"atoms": [["0.5", "-2.5e-1"]], "masses": ["1"]}
    ]
  })";
  const BarycenterInstance inst = validate_instance(parse_instance_json(text));
  CHECK(inst.weights[0] == Rational(1, 2));
  CHECK(inst.measures[1].atoms[0] == Vec2{Rational(1, 2), Rational(-1, 4)});
}

TEST_CASE("instance JSON errors carry context") {
  CHECK_THROWS_AS(parse_instance_json("not json"), IOError);
  CHECK_THROWS_AS(parse_instance_json("{}"), IOError);
  CHECK_THROWS_AS(parse_instance_json(R"({"weights": [], "measures": [{"atoms": []}]})"), IOError);
  CHECK_THROWS_AS(parse_instance_json(R"({"weights": ["x"], "measures": []})"), IOError);
}

TEST_CASE("solution JSON carries the exact certificate") {
  const BarycenterInstance inst = gen_diracs({{0, 0}, {2, 0}});
  const BarycenterSolution sol = solve_exact(inst);
  SolveStats stats;
  stats.wall_time_s = 0.5;
  const std::string text = solution_to_json(sol, sol.sep_value, stats);
  CHECK(text.find("\"cost\": \"1/1\"") != std::string::npos);
  CHECK(text.find("\"gap\": \"0/1\"") != std::string::npos);
  CHECK(text.find("\"dual_value\": \"1/1\"") != std::string::npos);
  CHECK(text.find("\"sep_value\": \"0/1\"") != std::string::npos);
}

TEST_CASE("solution file round trip through the loader") {
  const BarycenterInstance inst = gen_random(3, 2, 9, 50);
  const BarycenterSolution sol = solve_exact(inst);
  SolveStats stats;
  const std::string path = "/tmp/wbary_test_solution.json";
  save_solution(sol, sol.sep_value, stats, path);
  const LoadedSolution back = load_solution(path);
  CHECK(back.cost == sol.cost);
  CHECK(back.barycenter.atoms == sol.barycenter.atoms);
  CHECK(back.barycenter.masses == sol.barycenter.masses);
}
