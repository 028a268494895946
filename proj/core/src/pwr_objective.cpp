#include "lprl/pwr/objective.hpp"

#include <cmath>

#include "lprl/errors.hpp"

namespace lprl::pwr {

ConstraintSpec ConstraintSpec::defaults() {
  ConstraintSpec s;
  s.constraints = {
      {"cycle_length", 500.0, std::nullopt, 25000.0, 468.9, 530.8},
      {"fq", std::nullopt, 1.85, 25000.0, 1.768, 2.911},
      {"fdh", std::nullopt, 1.45, 25000.0, 1.429, 2.206},
      {"cb", std::nullopt, 1200.0, 25000.0, 952.7, 1405.1},
      {"pin_peak_bu", std::nullopt, 62.0, 25000.0, 55.506, 68.044},
      {"enrichment_count", 2.0, 3.0, 1000.0, 0.0, 1.0},
      {"bp_count", 1.0, 3.0, 1000.0, 0.0, 1.0},
  };
  return s;
}

void ConstraintSpec::set_fom_weights(double w) {
  for (auto& c : constraints)
    if (c.name != "enrichment_count" && c.name != "bp_count") c.weight = w;
}

namespace {

double fom_value(const FomSet& foms, const std::string& name,
                 int enrichment_count, int bp_count) {
  if (name == "cycle_length") return foms.cycle_length_efpd;
  if (name == "fq") return foms.fq;
  if (name == "fdh") return foms.fdh;
  if (name == "cb") return foms.cb_ppm;
  if (name == "pin_peak_bu") return foms.pin_peak_bu;
  if (name == "enrichment_count") return static_cast<double>(enrichment_count);
  if (name == "bp_count") return static_cast<double>(bp_count);
  throw ConfigError("unknown constraint name: " + name);
}

}  // namespace

ObjectiveResult objective(const FomSet& foms, double lcoe,
                          const ConstraintSpec& spec, int enrichment_count,
                          int bp_count) {
  ObjectiveResult out;
  out.lcoe = lcoe;
  out.feasible = true;
  double penalty_sum = 0.0;
  for (const auto& c : spec.constraints) {
    ConstraintEvaluation ev;
    ev.name = c.name;
    ev.value = fom_value(foms, c.name, enrichment_count, bp_count);
    const auto bound = c.violated_bound(ev.value);
    ev.satisfied = !bound.has_value();
    if (bound) {
      const double rel = (ev.value - *bound) / *bound;
      ev.phi = rel * rel;
      ev.penalty = c.weight * ev.phi;
      penalty_sum += ev.penalty;
      out.feasible = false;
    }
    out.breakdown.push_back(std::move(ev));
  }
  out.objective = -lcoe - penalty_sum + (out.feasible ? 1.0 : 0.0);
  return out;
}

double normalized_distance(const FomSet& foms, const ConstraintSpec& spec) {
  double sum = 0.0;
  for (const auto& c : spec.constraints) {
    if (c.name == "enrichment_count" || c.name == "bp_count") continue;
    const double x = fom_value(foms, c.name, 0, 0);
    const auto bound = c.violated_bound(x);
    if (!bound) continue;
    const double term = (x - *bound) / (c.range_hi - c.range_lo);
    sum += term * term;
  }
  return std::sqrt(sum);
}

nlohmann::json ConstraintSpec::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "constraint_spec";
  auto arr = nlohmann::json::array();
  for (const auto& c : constraints) {
    nlohmann::json e;
    e["name"] = c.name;
    if (c.lower) e["lower"] = *c.lower;
    if (c.upper) e["upper"] = *c.upper;
    e["weight"] = c.weight;
    e["range_lo"] = c.range_lo;
    e["range_hi"] = c.range_hi;
    arr.push_back(std::move(e));
  }
  j["constraints"] = std::move(arr);
  return j;
}

ConstraintSpec ConstraintSpec::from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema_version").get<int>() != 1)
      throw ConfigError("constraints: unsupported schema_version");
    ConstraintSpec s;
    for (const auto& e : j.at("constraints")) {
      Constraint c;
      c.name = e.at("name").get<std::string>();
      if (e.contains("lower")) c.lower = e.at("lower").get<double>();
      if (e.contains("upper")) c.upper = e.at("upper").get<double>();
      if (!c.lower && !c.upper)
        throw ConfigError("constraint " + c.name + " has no bound");
      c.weight = e.at("weight").get<double>();
      c.range_lo = e.value("range_lo", 0.0);
      c.range_hi = e.value("range_hi", 1.0);
      s.constraints.push_back(std::move(c));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("constraints: malformed JSON: ") + e.what());
  }
}

}  // namespace lprl::pwr
