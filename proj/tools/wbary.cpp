// wbary: exact Wasserstein barycenters of planar discrete measures.
//
// Solves the multimarginal transport formulation by column generation with a
// power-diagram separation oracle, entirely in rational arithmetic, and emits
// a zero-gap optimality certificate with every solution.

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wbary/barycenter.hpp"
#include "wbary/generate.hpp"
#include "wbary/io.hpp"
#include "wbary/reference.hpp"
#include "wbary/svg.hpp"

namespace {

using namespace wbary;

struct CommonSolveOpts {
  std::string input;
  std::string output;
  std::string svg_path;
  std::string oracle = "geometric";
  int batch = 50;
  std::string log_path;
};

void add_solve_opts(CLI::App* cmd, CommonSolveOpts& o) {
  cmd->add_option("--input", o.input, "instance JSON file")->required();
  cmd->add_option("--output", o.output, "solution JSON file")->required();
  cmd->add_option("--svg", o.svg_path, "also render the solution to this SVG file");
  cmd->add_option("--oracle", o.oracle, "separation oracle: geometric|bruteforce")
      ->check(CLI::IsMember({"geometric", "bruteforce"}));
  cmd->add_option("--batch", o.batch, "max violated columns added per iteration")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--log", o.log_path, "per-iteration progress log file");
}

SolveConfig make_config(const CommonSolveOpts& o, std::shared_ptr<std::ofstream>& log) {
  SolveConfig cfg;
  cfg.use_geometric_oracle = (o.oracle == "geometric");
  cfg.batch_size = o.batch;
  if (!o.log_path.empty()) {
    log = std::make_shared<std::ofstream>(o.log_path);
    if (!*log) throw IOError("cannot write " + o.log_path);
    auto sink = log;
    cfg.progress = [sink](const IterationRecord& r) {
      (*sink) << "iter=" << r.iteration << " columns=" << r.active_columns
              << " restricted=" << r.restricted_value.str() << " (~" << r.restricted_value_approx
              << ") sep=" << r.sep_value.str() << " (~" << r.sep_value_approx << ")\n";
      sink->flush();
    };
  }
  return cfg;
}

void write_outputs(const BarycenterInstance& inst, const BarycenterSolution& sol,
                   const SolveStats& stats, const CommonSolveOpts& o) {
  save_solution(sol, sol.sep_value, stats, o.output);
  if (!o.svg_path.empty()) {
    std::ofstream out(o.svg_path);
    if (!out) throw IOError("cannot write " + o.svg_path);
    out << render_svg(inst, sol.barycenter);
  }
}

int cmd_solve(const CommonSolveOpts& o) {
  const BarycenterInstance inst = validate_instance(load_instance(o.input));
  std::shared_ptr<std::ofstream> log;
  SolveConfig cfg = make_config(o, log);
  const auto t0 = std::chrono::steady_clock::now();
  BarycenterSolution sol = solve_exact(inst, cfg);
  SolveStats stats;
  stats.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_outputs(inst, sol, stats, o);
  std::cout << "cost " << sol.cost.str() << " (~" << sol.cost.to_double() << "), support "
            << sol.barycenter.size() << ", iterations " << sol.mot.iterations << ", gap 0\n";
  return 0;
}

int cmd_approx(const CommonSolveOpts& o, const std::string& eps_text) {
  const Rational eps = Rational::from_string(eps_text);
  if (eps.sign() <= 0) throw std::invalid_argument("--eps must be positive");
  const BarycenterInstance inst = validate_instance(load_instance(o.input));
  std::shared_ptr<std::ofstream> log;
  SolveConfig cfg = make_config(o, log);
  const auto t0 = std::chrono::steady_clock::now();
  const QuantizedInstance q = quantize_instance_detailed(inst, eps);
  BarycenterSolution sol = solve_exact(q.instance, cfg);
  SolveStats stats;
  stats.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  stats.approx = true;
  stats.eps = eps.fraction_str();
  stats.delta_x = q.delta_x.fraction_str();
  stats.delta_lambda = q.delta_lambda.fraction_str();
  write_outputs(q.instance, sol, stats, o);
  std::cout << "cost " << sol.cost.str() << " (~" << sol.cost.to_double()
            << ") on the eps=" << eps.str() << " rounded instance, support "
            << sol.barycenter.size() << "\n";
  return 0;
}

std::vector<Vec2> parse_points(const std::string& text) {
  std::vector<Vec2> pts;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) return;
    const auto comma = cur.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("--points: expected x,y pairs separated by ';'");
    pts.push_back(Vec2{Rational::from_string(cur.substr(0, comma)),
                       Rational::from_string(cur.substr(comma + 1))});
    cur.clear();
  };
  for (char c : text) {
    if (c == ';' || c == ' ')
      flush();
    else
      cur += c;
  }
  flush();
  return pts;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::string cur;
  for (char c : text) {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) seeds.push_back(std::stoull(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) seeds.push_back(std::stoull(cur));
  return seeds;
}

int cmd_bench(int n, int k, const std::string& seeds_text, std::uint64_t denominator,
              const std::string& out_path) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw IOError("cannot write " + out_path);
    out = &file;
  }
  (*out) << "seed,n,k,wall_s,iterations,columns,support,certificate\n";
  for (std::uint64_t seed : parse_seed_list(seeds_text)) {
    const BarycenterInstance inst = gen_random(n, k, seed, denominator);
    const auto t0 = std::chrono::steady_clock::now();
    const BarycenterSolution sol = solve_exact(inst);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    (*out) << seed << "," << n << "," << k << "," << wall << "," << sol.mot.iterations << ","
           << sol.mot.columns_generated << "," << sol.barycenter.size() << ",pass\n";
    out->flush();
  }
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"exact Wasserstein barycenter solver"};
  app.require_subcommand(1);

  CommonSolveOpts solve_opts;
  CLI::App* solve = app.add_subcommand("solve", "solve an instance exactly");
  add_solve_opts(solve, solve_opts);

  CommonSolveOpts approx_opts;
  std::string eps_text;
  CLI::App* approx = app.add_subcommand("approx", "solve a grid-rounded instance exactly");
  add_solve_opts(approx, approx_opts);
  approx->add_option("--eps", eps_text, "additive accuracy (rational)")->required();

  CLI::App* gen = app.add_subcommand("gen", "generate instance files");
  gen->require_subcommand(1);
  int gn = 20, gk = 10, gsize = 16;
  std::uint64_t gseed = 1, gden = 1000;
  std::string gout, gpoints;
  CLI::App* grandom = gen->add_subcommand("random", "uniform random measures in [-1,1]^2");
  grandom->add_option("--n", gn, "atoms per measure")->check(CLI::PositiveNumber);
  grandom->add_option("--k", gk, "number of measures")->check(CLI::PositiveNumber);
  grandom->add_option("--seed", gseed, "RNG seed");
  grandom->add_option("--denominator", gden, "coordinate grid denominator")->check(CLI::PositiveNumber);
  grandom->add_option("--output", gout, "instance file")->required();
  CLI::App* gdiracs = gen->add_subcommand("diracs", "one Dirac measure per point");
  gdiracs->add_option("--points", gpoints, "points as \"x,y;x,y;...\"")->required();
  gdiracs->add_option("--output", gout, "instance file")->required();
  CLI::App* gell = gen->add_subcommand("ellipses", "synthetic nested-ellipse images");
  gell->add_option("--size", gsize, "grid side length")->check(CLI::PositiveNumber);
  gell->add_option("--k", gk, "number of images")->check(CLI::PositiveNumber);
  gell->add_option("--seed", gseed, "RNG seed");
  gell->add_option("--output", gout, "instance file")->required();

  std::string rin, rsol, rout;
  CLI::App* render = app.add_subcommand("render", "render an instance + solution to SVG");
  render->add_option("--input", rin, "instance JSON file")->required();
  render->add_option("--solution", rsol, "solution JSON file")->required();
  render->add_option("--out", rout, "output SVG file")->required();

  int bn = 3, bk = 3;
  std::uint64_t bden = 1000;
  std::string bseeds, bout;
  CLI::App* bench = app.add_subcommand("bench", "solve generated instances and report timings");
  bench->add_option("--n", bn, "atoms per measure")->check(CLI::PositiveNumber);
  bench->add_option("--k", bk, "number of measures")->check(CLI::PositiveNumber);
  bench->add_option("--seeds", bseeds, "comma-separated seed list");
  bench->add_option("--denominator", bden, "coordinate grid denominator")->check(CLI::PositiveNumber);
  bench->add_option("--out", bout, "CSV output file (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "independent brute-force checks");
  verify->require_subcommand(1);
  std::string vin;
  std::uint64_t vbudget = 10000, vseed = 1;
  int vsamples = 10000;
  CLI::App* vbrute = verify->add_subcommand("brute-mot", "dense LP over all tuples");
  vbrute->add_option("--input", vin, "instance JSON file")->required();
  vbrute->add_option("--budget", vbudget, "max tuple count");
  CLI::App* vcover = verify->add_subcommand("coverage", "cell-enumeration coverage probe");
  vcover->add_option("--input", vin, "instance JSON file")->required();
  vcover->add_option("--samples", vsamples, "sample count")->check(CLI::PositiveNumber);
  vcover->add_option("--seed", vseed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (solve->parsed()) return cmd_solve(solve_opts);
  if (approx->parsed()) return cmd_approx(approx_opts, eps_text);
  if (gen->parsed()) {
    BarycenterInstance inst;
    if (grandom->parsed())
      inst = gen_random(gn, gk, gseed, gden);
    else if (gdiracs->parsed())
      inst = gen_diracs(parse_points(gpoints));
    else
      inst = gen_ellipses(gsize, gk, gseed);
    validate_instance(inst);
    save_instance(inst, gout);
    std::cout << "wrote " << gout << "\n";
    return 0;
  }
  if (render->parsed()) {
    const BarycenterInstance inst = validate_instance(load_instance(rin));
    const LoadedSolution sol = load_solution(rsol);
    if (sol.barycenter.atoms.empty()) throw IOError("render: solution has no barycenter atoms");
    std::ofstream out(rout);
    if (!out) throw IOError("cannot write " + rout);
    out << render_svg(inst, sol.barycenter);
    std::cout << "wrote " << rout << "\n";
    return 0;
  }
  if (bench->parsed()) return cmd_bench(bn, bk, bseeds, bden, bout);
  if (verify->parsed()) {
    const BarycenterInstance inst = validate_instance(load_instance(vin));
    if (vbrute->parsed()) {
      const MotSolution sol = brute_mot(inst, vbudget);
      std::cout << "brute-mot value " << sol.value.str() << " (~" << sol.value.to_double()
                << "), support " << sol.coupling.support_size() << "\n";
      return 0;
    }
    // coverage: probe at zero potentials and at the solved potentials
    const DualPotentials zero = DualPotentials::zeros(inst);
    const CoverageVerdict at_zero = coverage_probe(inst, zero, vsamples, vseed);
    const BarycenterSolution sol = solve_exact(inst);
    const CoverageVerdict at_opt = coverage_probe(inst, sol.mot.potentials, vsamples, vseed + 1);
    for (const auto& [name, v] : {std::pair<const char*, const CoverageVerdict&>{"zero", at_zero},
                                  {"optimal", at_opt}}) {
      std::cout << "coverage at " << name << " potentials: " << (v.pass ? "pass" : "FAIL") << " ("
                << v.checked << " checked, " << v.skipped << " boundary skips)";
      if (!v.pass) std::cout << " " << v.counterexample;
      std::cout << "\n";
    }
    return (at_zero.pass && at_opt.pass) ? 0 : 1;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const wbary::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
