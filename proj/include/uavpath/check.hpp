#ifndef UAVPATH_CHECK_HPP_
#define UAVPATH_CHECK_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uavpath/exact.hpp"
#include "uavpath/milp.hpp"
#include "uavpath/operators.hpp"
#include "uavpath/random.hpp"

namespace uavpath {

struct CheckOptions {
  EnumerationCaps caps;
  /// Every assignment is checked when the instance has at most this many;
  /// otherwise the front plus `sampled` random chromosomes are checked.
  std::uint64_t exhaustive_limit = 20000;
  int sampled = 1000;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  /// Test hook: break the first row of this family before substituting.
  std::optional<std::string> corrupt_family;
};

struct CheckReport {
  std::size_t front_size = 0;
  std::uint64_t paths = 0;
  std::uint64_t checked = 0;       ///< assignments pushed through both checks
  bool exhaustive = false;
  double max_relative_error = 0.0;  ///< chromosome vs assignment evaluator
  std::size_t lp_rows = 0;
  std::size_t lp_variables = 0;
  std::map<std::string, bool> family_caught;  ///< mutation test outcome per family
  std::vector<std::string> untestable;        ///< families no corruption can reach here
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

inline double relative_error(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return std::abs(a - b) / scale;
}

/// Breaks one row so that valid assignments no longer satisfy it.
inline void corrupt_row(MilpModel& m, const std::string& family) {
  for (LpRow& r : m.rows) {
    if (r.family != family) continue;
    switch (r.sense) {
      case Sense::eq: r.rhs += 1.0; break;
      case Sense::le: r.rhs = -1e9; break;
      case Sense::ge: r.rhs = 1e9; break;
    }
    return;
  }
  throw std::invalid_argument("corrupt_row: no row in family " + family);
}

namespace detail {

/// Substitutes one assignment into the model and compares the linearized
/// quantities with their direct values. Returns a failure text or empty.
inline std::string substitute(const MilpModel& m, const Environment& env, const DroneParams& params,
                              const Chromosome& ch, const ObjectiveVector& z, double tol) {
  const auto values = assignment_values(m, env, ch);
  const auto bad = violated_rows(m, values, tol);
  if (!bad.empty()) {
    const std::string row = bad.front() < 0 ? "variable bounds" : m.rows[static_cast<std::size_t>(bad.front())].name;
    return "assignment violates " + std::to_string(bad.size()) + " row(s), first " + row;
  }
  const auto terms = segment_terms(ch, env, params);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const CellId i = ch.cells[t], j = ch.cells[t + 1];
    auto value = [&](const char* prefix) { return values[static_cast<std::size_t>(m.var(arc_name(prefix, i, j)))]; };
    // The delta row pins D to the linear form over X or U; recompute it from
    // the row itself.
    const std::string row_name = t == 0 ? arc_name("delta_start", i, j) : arc_name("delta_link", i, j);
    double linear = 0.0;
    for (const LpRow& r : m.rows) {
      if (r.name != row_name) continue;
      for (const LpTerm& term : r.terms) {
        if (m.variables[static_cast<std::size_t>(term.var)].name != arc_name("D", i, j)) {
          linear -= term.coef * values[static_cast<std::size_t>(term.var)];
        }
      }
    }
    if (linear != terms[t].climb || value("D") != terms[t].climb || value("Dp") != terms[t].ascent ||
        value("Dm") != terms[t].descent || value("Pp") - value("Pm") != terms[t].climb) {
      return "linearized altitude change differs from the direct value on segment " + std::to_string(t);
    }
  }
  if (relative_error(objective_value(m, values), z.length) > tol) return "length objective differs after substitution";
  return {};
}

}  // namespace detail

/// Oracle checks on a small instance: exact front, agreement of the two
/// evaluators, LP substitution (also with doubled M) and the exporter
/// mutation test.
inline CheckReport run_check(const Environment& env, const DroneParams& params, const CheckOptions& opt = {}) {
  CheckReport rep;
  const ExactFront front = enumerate(env, params, opt.caps);
  rep.front_size = front.members.size();
  rep.paths = front.paths;

  MilpModel model = build_milp(env, params);
  LpLimits doubled;
  doubled.big_m = 2.0 * model.big_m;
  const MilpModel model2 = build_milp(env, params, {}, doubled);
  if (opt.corrupt_family) corrupt_row(model, *opt.corrupt_family);
  rep.lp_rows = model.rows.size();
  rep.lp_variables = model.variables.size();

  std::uint64_t total = 0;
  for_each_path(env, opt.caps, [&](std::span<const CellId> path) {
    std::uint64_t product = 1;
    for (std::size_t t = 1; t < path.size() && product <= opt.exhaustive_limit; ++t) product *= env.admissible_levels(path[t]).size();
    total += product;
  });
  rep.exhaustive = total <= opt.exhaustive_limit;

  std::vector<Point3> seen;
  auto check_one = [&](const Chromosome& ch) {
    ++rep.checked;
    const ObjectiveVector z = evaluate(ch, env, params);
    seen.push_back({z.length, z.energy, z.risk});
    const auto arcs = to_assignment(ch);
    const ObjectiveVector d = evaluate_assignment(arcs, env, params);
    const double err = std::max({relative_error(z.length, d.length), relative_error(z.energy, d.energy), relative_error(z.risk, d.risk)});
    rep.max_relative_error = std::max(rep.max_relative_error, err);
    if (err > opt.tolerance && rep.failures.size() < 20) rep.failures.push_back("evaluators disagree by " + std::to_string(err));
    for (const MilpModel* mm : std::array<const MilpModel*, 2>{&model, &model2}) {
      const std::string msg = detail::substitute(*mm, env, params, ch, z, opt.tolerance);
      if (!msg.empty() && rep.failures.size() < 20) {
        rep.failures.push_back((mm == &model ? "LP substitution: " : "LP substitution with doubled M: ") + msg);
      }
    }
  };

  if (rep.exhaustive) {
    EnumerationCaps caps = opt.caps;
    caps.max_states = opt.exhaustive_limit;
    for_each_assignment(env, caps, check_one);
  } else {
    for (const auto& m : front.members) check_one(m.chromosome);
    Rng rng(opt.seed);
    for (int s = 0; s < opt.sampled; ++s) check_one(initialize(env, rng));
  }

  // Every front member must be non-dominated by the other members and by
  // the sampled solutions checked above.
  for (const auto& b : front.members) seen.push_back({b.objectives.length, b.objectives.energy, b.objectives.risk});
  for (const auto& a : front.members) {
    const Point3 p{a.objectives.length, a.objectives.energy, a.objectives.risk};
    if (std::any_of(seen.begin(), seen.end(), [&](const Point3& q) { return dominates(q, p); })) {
      rep.failures.push_back("exact front member is dominated");
      break;
    }
  }

  if (!front.members.empty()) {
    const Chromosome& witness = front.members.front().chromosome;
    for (const Corruption& c : corruptions(model, env, witness)) {
      const auto bad = violated_rows(model, c.values);
      bool caught = false;
      for (int r : bad) caught = caught || (r >= 0 && model.rows[static_cast<std::size_t>(r)].family == c.family);
      rep.family_caught[c.family] = rep.family_caught[c.family] || caught;
    }
    // risk_cap exists only in the epsilon model: a cap just below the
    // witness risk must reject the witness.
    const double witness_risk = front.members.front().objectives.risk;
    const MilpModel capped = build_milp(env, params, LpObjective::epsilon_risk(witness_risk - 1e-6));
    bool cap_caught = false;
    for (int r : violated_rows(capped, assignment_values(capped, env, witness))) {
      cap_caught = cap_caught || (r >= 0 && capped.rows[static_cast<std::size_t>(r)].family == "risk_cap");
    }
    rep.family_caught["risk_cap"] = cap_caught;
    for (const LpRow& r : model.rows) {
      if (rep.family_caught.contains(r.family)) continue;
      if (std::find(rep.untestable.begin(), rep.untestable.end(), r.family) == rep.untestable.end()) {
        rep.untestable.push_back(r.family);
      }
    }
    for (const auto& [family, caught] : rep.family_caught) {
      if (!caught) rep.failures.push_back("mutation test: no corruption violates family " + family);
    }
  }
  return rep;
}

}  // namespace uavpath

#endif  // UAVPATH_CHECK_HPP_
