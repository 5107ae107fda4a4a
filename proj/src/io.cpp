#include "wbary/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wbary {

namespace {

using nlohmann::json;

Rational rat(const json& j, const char* what) {
  try {
    if (j.is_string()) return Rational::from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rational(static_cast<long long>(j.get<std::int64_t>()));
  } catch (const std::exception& e) {
    throw IOError(std::string(what) + ": " + e.what());
  }
  throw IOError(std::string(what) + ": expected a rational string");
}

json rat_json(const Rational& r) { return r.fraction_str(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IOError("cannot write " + path);
  out << text;
}

DiscreteMeasure parse_measure(const json& jm) {
  DiscreteMeasure m;
  if (!jm.is_object() || !jm.contains("atoms") || !jm.contains("masses"))
    throw IOError("measure: expected {atoms, masses}");
  for (const auto& ja : jm.at("atoms")) {
    if (!ja.is_array() || ja.size() != 2) throw IOError("atom: expected [x, y]");
    m.atoms.push_back(Vec2{rat(ja[0], "atom x"), rat(ja[1], "atom y")});
  }
  for (const auto& jv : jm.at("masses")) m.masses.push_back(rat(jv, "mass"));
  return m;
}

json measure_json(const DiscreteMeasure& m) {
  json jm;
  jm["atoms"] = json::array();
  for (const auto& a : m.atoms) jm["atoms"].push_back(json::array({rat_json(a.x), rat_json(a.y)}));
  jm["masses"] = json::array();
  for (const auto& v : m.masses) jm["masses"].push_back(rat_json(v));
  return jm;
}

}  // namespace

BarycenterInstance parse_instance_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw IOError(std::string("instance: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw IOError("instance: expected a JSON object");
  BarycenterInstance inst;
  inst.dimension = j.value("dimension", 2);
  if (!j.contains("weights") || !j.contains("measures"))
    throw IOError("instance: expected {dimension, weights, measures}");
  for (const auto& jw : j.at("weights")) inst.weights.push_back(rat(jw, "weight"));
  for (const auto& jm : j.at("measures")) inst.measures.push_back(parse_measure(jm));
  return inst;
}

BarycenterInstance load_instance(const std::string& path) {
  return parse_instance_json(read_file(path));
}

std::string instance_to_json(const BarycenterInstance& inst) {
  json j;
  j["dimension"] = inst.dimension;
  j["weights"] = json::array();
  for (const auto& w : inst.weights) j["weights"].push_back(rat_json(w));
  j["measures"] = json::array();
  for (const auto& m : inst.measures) j["measures"].push_back(measure_json(m));
  return j.dump(2) + "\n";
}

void save_instance(const BarycenterInstance& inst, const std::string& path) {
  write_file(path, instance_to_json(inst));
}

std::string solution_to_json(const BarycenterSolution& sol, const Rational& sep_value,
                             const SolveStats& stats) {
  json j;
  j["cost"] = rat_json(sol.cost);
  j["cost_approx"] = sol.cost.to_double();
  j["barycenter"] = measure_json(sol.barycenter);

  j["transport_maps"] = json::array();
  for (const auto& map : sol.transport_maps) {
    json jm = json::array();
    for (const auto& e : map)
      jm.push_back(json::array({e.nu_atom + 1, e.mu_atom + 1, rat_json(e.mass)}));
    j["transport_maps"].push_back(std::move(jm));
  }

  Rational dual_value = sol.mot.value;  // certified equal to the primal cost
  j["certificate"] = {
      {"dual_value", rat_json(dual_value)},
      {"sep_value", rat_json(sep_value)},
      {"gap", rat_json(sol.cost - dual_value)},
  };

  json js;
  js["iterations"] = sol.mot.iterations;
  js["columns_generated"] = sol.mot.columns_generated;
  js["support_size"] = sol.barycenter.size();
  js["wall_time_s"] = stats.wall_time_s;
  if (stats.approx) {
    js["eps"] = stats.eps;
    js["delta_x"] = stats.delta_x;
    js["delta_lambda"] = stats.delta_lambda;
  }
  j["stats"] = std::move(js);
  return j.dump(2) + "\n";
}

void save_solution(const BarycenterSolution& sol, const Rational& sep_value,
                   const SolveStats& stats, const std::string& path) {
  write_file(path, solution_to_json(sol, sep_value, stats));
}

LoadedSolution load_solution(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const IOError&) {
    throw;
  } catch (const std::exception& e) {
    throw IOError(std::string("solution: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("barycenter") || !j.contains("cost"))
    throw IOError("solution: expected {cost, barycenter, ...}");
  LoadedSolution out;
  out.barycenter = parse_measure(j.at("barycenter"));
  out.cost = rat(j.at("cost"), "cost");
  return out;
}

}  // namespace wbary
