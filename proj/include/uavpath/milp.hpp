#ifndef UAVPATH_MILP_HPP_
#define UAVPATH_MILP_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "uavpath/environment.hpp"
#include "uavpath/errors.hpp"
#include "uavpath/physics.hpp"
#include "uavpath/solution.hpp"

namespace uavpath {

enum class VarKind { binary, free, nonnegative };
enum class Sense { le, ge, eq };

struct LpVariable {
  std::string name;
  VarKind kind = VarKind::nonnegative;
};

struct LpTerm {
  int var = 0;
  double coef = 0.0;
};

struct LpRow {
  std::string name;
  std::string family;
  std::vector<LpTerm> terms;
  Sense sense = Sense::eq;
  double rhs = 0.0;
  bool added = false;  ///< strengthening row, not part of the base formulation
};

/// Row families in emission order.
inline const std::vector<std::string>& row_families() {
  static const std::vector<std::string> families = {
      "flow_start",  "flow_goal",  "flow_balance", "flow_terminal", "alt_floor",   "alt_ceiling",
      "delta_start", "delta_link", "prod_lower",   "prod_upper",    "prod_upper_x", "split",
      "split_choice", "split_link", "asc_lower",   "asc_upper",     "asc_on",      "desc_lower",
      "desc_upper",  "desc_on",    "risk_cap"};
  return families;
}

struct LpObjective {
  enum class Kind { length, weighted, epsilon } kind = Kind::length;
  double weight = 0.5;
  NormBounds bounds;
  double epsilon = 0.0;

  static LpObjective length() { return {}; }
  static LpObjective weighted(double w, const NormBounds& b) { return {Kind::weighted, w, b, 0.0}; }
  static LpObjective epsilon_risk(double eps) { return {Kind::epsilon, 0.5, {}, eps}; }
};

struct LpLimits {
  std::size_t max_variables = 2'000'000;
  /// Big-M override; 0 picks a value from the instance.
  double big_m = 0.0;
};

struct MilpModel {
  std::vector<LpVariable> variables;
  std::vector<LpRow> rows;
  std::vector<LpTerm> objective;
  double objective_constant = 0.0;
  bool objective_degenerate = false;
  double big_m = 0.0;
  std::vector<std::string> notes;
  std::unordered_map<std::string, int> index;

  int var(const std::string& name) const {
    const auto it = index.find(name);
    if (it == index.end()) throw std::out_of_range("milp: unknown variable " + name);
    return it->second;
  }
  bool has_var(const std::string& name) const { return index.contains(name); }
  bool has_family(const std::string& family) const {
    return std::any_of(rows.begin(), rows.end(), [&](const LpRow& r) { return r.family == family; });
  }
};

namespace detail {

inline std::string arc_name(const char* prefix, CellId i, CellId j) {
  return std::string(prefix) + "_" + std::to_string(i) + "_" + std::to_string(j);
}
inline std::string x_name(CellId i, CellId j, int k) { return arc_name("X", i, j) + "_" + std::to_string(k); }
inline std::string u_name(CellId g, CellId i, CellId j, int k, int kp) {
  return "U_" + std::to_string(g) + "_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k) + "_" +
         std::to_string(kp);
}

inline double interval_max_risk(const Environment& env, CellId cell, int a, int b) {
  const auto& r = env.cell(cell).risk;
  const auto [lo, hi] = std::minmax(a, b);
  return *std::max_element(r.begin() + lo, r.begin() + hi + 1);
}

inline double pick_big_m(const Environment& env) {
  double span = env.top_altitude() - env.levels().front();
  double largest = std::max(span, env.top_altitude());
  for (const CellData& c : env.cells()) {
    if (std::isfinite(c.max_altitude)) largest = std::max(largest, std::abs(c.max_altitude));
    largest = std::max(largest, c.obstacle_height);
  }
  return 2.0 * largest + 1.0;
}

}  // namespace detail

/// Builds the linearized integer program: arc/level flow variables X,
/// products U of consecutive arcs, altitude change D split into ascent Dp
/// and descent Dm with selector binaries y/yp and products Pp/Pm.
inline MilpModel build_milp(const Environment& env, const DroneParams& params, const LpObjective& objective = {},
                            const LpLimits& limits = {}) {
  const int K = env.level_count();
  const CellId A = env.start();
  const CellId N = env.goal();
  const auto h = env.levels();
  const double hA = env.start_altitude();

  std::size_t estimate = 0;
  for (CellId i = 0; i < env.cell_count(); ++i) {
    estimate += env.successors(i).size() * (static_cast<std::size_t>(K) + 7);
    if (i != A) estimate += env.successors(i).size() * env.predecessors(i).size() * static_cast<std::size_t>(K * K);
  }
  if (estimate > limits.max_variables) {
    throw TooLargeError("lp export refused: about " + std::to_string(estimate) + " variables exceed the limit of " +
                        std::to_string(limits.max_variables));
  }

  MilpModel m;
  m.big_m = limits.big_m > 0.0 ? limits.big_m : detail::pick_big_m(env);
  const double M = m.big_m;
  auto add_var = [&](std::string name, VarKind kind) {
    m.index.emplace(name, static_cast<int>(m.variables.size()));
    m.variables.push_back({std::move(name), kind});
  };
  auto add_row = [&](std::string family, std::string name, std::vector<LpTerm> terms, Sense sense, double rhs,
                     bool added = false) {
    m.rows.push_back({std::move(name), std::move(family), std::move(terms), sense, rhs, added});
  };

  for (CellId i = 0; i < env.cell_count(); ++i) {
    for (CellId j : env.successors(i)) {
      for (int k = 0; k < K; ++k) add_var(detail::x_name(i, j, k), VarKind::binary);
    }
  }
  for (CellId i = 0; i < env.cell_count(); ++i) {
    if (i == A) continue;
    for (CellId j : env.successors(i)) {
      for (CellId g : env.predecessors(i)) {
        for (int k = 0; k < K; ++k) {
          for (int kp = 0; kp < K; ++kp) add_var(detail::u_name(g, i, j, k, kp), VarKind::binary);
        }
      }
    }
  }
  for (CellId i = 0; i < env.cell_count(); ++i) {
    for (CellId j : env.successors(i)) {
      add_var(detail::arc_name("D", i, j), VarKind::free);
      add_var(detail::arc_name("Dp", i, j), VarKind::nonnegative);
      add_var(detail::arc_name("Dm", i, j), VarKind::nonnegative);
      add_var(detail::arc_name("y", i, j), VarKind::binary);
      add_var(detail::arc_name("yp", i, j), VarKind::binary);
      add_var(detail::arc_name("Pp", i, j), VarKind::nonnegative);
      add_var(detail::arc_name("Pm", i, j), VarKind::nonnegative);
    }
  }
  auto X = [&](CellId i, CellId j, int k) { return m.var(detail::x_name(i, j, k)); };
  auto U = [&](CellId g, CellId i, CellId j, int k, int kp) { return m.var(detail::u_name(g, i, j, k, kp)); };
  auto V = [&](const char* prefix, CellId i, CellId j) { return m.var(detail::arc_name(prefix, i, j)); };

  // Network flow.
  {
    std::vector<LpTerm> t;
    for (CellId j : env.successors(A)) {
      for (int k = 0; k < K; ++k) t.push_back({X(A, j, k), 1.0});
    }
    add_row("flow_start", "flow_start", std::move(t), Sense::eq, 1.0);
  }
  {
    std::vector<LpTerm> t;
    for (CellId i : env.predecessors(N)) {
      for (int k = 0; k < K; ++k) t.push_back({X(i, N, k), 1.0});
    }
    add_row("flow_goal", "flow_goal", std::move(t), Sense::eq, 1.0);
  }
  for (CellId i = 0; i < env.cell_count(); ++i) {
    if (i == A || i == N) continue;
    std::vector<LpTerm> t;
    for (CellId j : env.successors(i)) {
      for (int k = 0; k < K; ++k) t.push_back({X(i, j, k), 1.0});
    }
    for (CellId j : env.predecessors(i)) {
      for (int k = 0; k < K; ++k) t.push_back({X(j, i, k), -1.0});
    }
    if (!t.empty()) add_row("flow_balance", "flow_balance_" + std::to_string(i), std::move(t), Sense::eq, 0.0);
  }
  if (!env.successors(N).empty()) {
    std::vector<LpTerm> t;
    for (CellId j : env.successors(N)) {
      for (int k = 0; k < K; ++k) t.push_back({X(N, j, k), 1.0});
    }
    add_row("flow_terminal", "flow_terminal", std::move(t), Sense::eq, 0.0);
  }

  // Entry altitude between obstacle and ceiling; the floor is relaxed by M
  // when the arc is unused.
  for (CellId j = 0; j < env.cell_count(); ++j) {
    if (j == A) continue;
    const CellData& cell = env.cell(j);
    for (CellId i : env.predecessors(j)) {
      std::vector<LpTerm> floor, ceiling;
      for (int k = 0; k < K; ++k) {
        const double hk = h[static_cast<std::size_t>(k)];
        floor.push_back({X(i, j, k), hk - M});
        ceiling.push_back({X(i, j, k), hk});
      }
      add_row("alt_floor", detail::arc_name("alt_floor", i, j), std::move(floor), Sense::ge, cell.obstacle_height - M);
      add_row("alt_ceiling", detail::arc_name("alt_ceiling", i, j), std::move(ceiling), Sense::le, cell.max_altitude);
    }
  }

  // Altitude change of every arc.
  for (CellId j : env.successors(A)) {
    std::vector<LpTerm> t{{V("D", A, j), 1.0}};
    for (int k = 0; k < K; ++k) t.push_back({X(A, j, k), -(h[static_cast<std::size_t>(k)] - hA)});
    add_row("delta_start", detail::arc_name("delta_start", A, j), std::move(t), Sense::eq, 0.0);
  }
  for (CellId i = 0; i < env.cell_count(); ++i) {
    if (i == A) continue;
    for (CellId j : env.successors(i)) {
      std::vector<LpTerm> t{{V("D", i, j), 1.0}};
      for (CellId g : env.predecessors(i)) {
        for (int k = 0; k < K; ++k) {
          for (int kp = 0; kp < K; ++kp) {
            const double diff = h[static_cast<std::size_t>(k)] - h[static_cast<std::size_t>(kp)];
            if (diff != 0.0) t.push_back({U(g, i, j, k, kp), -diff});
          }
        }
      }
      add_row("delta_link", detail::arc_name("delta_link", i, j), std::move(t), Sense::eq, 0.0);
      for (CellId g : env.predecessors(i)) {
        for (int k = 0; k < K; ++k) {
          for (int kp = 0; kp < K; ++kp) {
            const int u = U(g, i, j, k, kp);
            const int xa = X(i, j, k);
            const int xb = X(g, i, kp);
            const std::string suffix = "_" + std::to_string(g) + "_" + std::to_string(i) + "_" + std::to_string(j) +
                                       "_" + std::to_string(k) + "_" + std::to_string(kp);
            add_row("prod_lower", "prod_lower" + suffix, {{u, 1.0}, {xa, -1.0}, {xb, -1.0}}, Sense::ge, -1.0);
            add_row("prod_upper", "prod_upper" + suffix, {{u, 2.0}, {xa, -1.0}, {xb, -1.0}}, Sense::le, 0.0);
            add_row("prod_upper_x", "prod_upper_xa" + suffix, {{u, 1.0}, {xa, -1.0}}, Sense::le, 0.0, true);
            add_row("prod_upper_x", "prod_upper_xb" + suffix, {{u, 1.0}, {xb, -1.0}}, Sense::le, 0.0, true);
          }
        }
      }
    }
  }

  // Ascent/descent split with big-M products.
  for (CellId i = 0; i < env.cell_count(); ++i) {
    for (CellId j : env.successors(i)) {
      const int d = V("D", i, j), dp = V("Dp", i, j), dm = V("Dm", i, j);
      const int y = V("y", i, j), yp = V("yp", i, j), pp = V("Pp", i, j), pm = V("Pm", i, j);
      add_row("split", detail::arc_name("split", i, j), {{dp, 1.0}, {dm, -1.0}, {d, -1.0}}, Sense::eq, 0.0);
      add_row("split_choice", detail::arc_name("split_choice", i, j), {{y, 1.0}, {yp, 1.0}}, Sense::eq, 1.0);
      add_row("split_link", detail::arc_name("split_link", i, j), {{pp, 1.0}, {pm, -1.0}, {d, -1.0}}, Sense::eq, 0.0);
      add_row("asc_lower", detail::arc_name("asc_lower", i, j), {{pp, 1.0}, {dp, -1.0}, {y, -M}}, Sense::ge, -M);
      add_row("asc_upper", detail::arc_name("asc_upper", i, j), {{pp, 1.0}, {dp, -1.0}, {y, M}}, Sense::le, M);
      add_row("asc_on", detail::arc_name("asc_on", i, j), {{pp, 1.0}, {y, -M}}, Sense::le, 0.0);
      add_row("desc_lower", detail::arc_name("desc_lower", i, j), {{pm, 1.0}, {dm, -1.0}, {yp, -M}}, Sense::ge, -M);
      add_row("desc_upper", detail::arc_name("desc_upper", i, j), {{pm, 1.0}, {dm, -1.0}, {yp, M}}, Sense::le, M);
      add_row("desc_on", detail::arc_name("desc_on", i, j), {{pm, 1.0}, {yp, -M}}, Sense::le, 0.0);
    }
  }

  // Objective coefficients.
  const double theta = params.theta();
  const double nu = params.speed_mps;
  const double rhoA = air_density(hA, params);
  std::vector<LpTerm> length, energy, risk;
  for (CellId j : env.successors(A)) {
    const double d = env.distance(A, j);
    for (int k = 0; k < K; ++k) {
      const double hk = h[static_cast<std::size_t>(k)];
      const double sq = (hk - hA) * (hk - hA) + d * d;
      length.push_back({X(A, j, k), std::sqrt(sq)});
      energy.push_back({X(A, j, k), theta / nu * std::sqrt(sq / ((rhoA + air_density(hk, params)) / 2.0))});
      risk.push_back({X(A, j, k), detail::interval_max_risk(env, A, k, env.start_level())});
    }
  }
  for (CellId i = 0; i < env.cell_count(); ++i) {
    if (i == A) continue;
    for (CellId j : env.successors(i)) {
      const double d = env.distance(i, j);
      for (CellId g : env.predecessors(i)) {
        for (int k = 0; k < K; ++k) {
          for (int kp = 0; kp < K; ++kp) {
            const double hk = h[static_cast<std::size_t>(k)];
            const double hkp = h[static_cast<std::size_t>(kp)];
            const double sq = (hk - hkp) * (hk - hkp) + d * d;
            const int u = U(g, i, j, k, kp);
            length.push_back({u, std::sqrt(sq)});
            energy.push_back(
                {u, theta / nu * std::sqrt(sq / ((air_density(hkp, params) + air_density(hk, params)) / 2.0))});
            risk.push_back({u, detail::interval_max_risk(env, i, k, kp)});
          }
        }
      }
    }
  }
  for (CellId i = 0; i < env.cell_count(); ++i) {
    for (CellId j : env.successors(i)) energy.push_back({V("Dp", i, j), params.weight_kg * params.gravity});
  }

  char buf[128];
  std::snprintf(buf, sizeof buf, "big-M = %.17g", M);
  m.notes.push_back(buf);
  m.notes.push_back("descent product bound written as Pm <= M yp");
  m.notes.push_back("rows prod_upper_xa/xb (U <= X) are added strengthening");
  switch (objective.kind) {
    case LpObjective::Kind::length:
      m.objective = std::move(length);
      m.notes.push_back("objective: path length");
      break;
    case LpObjective::Kind::epsilon: {
      m.objective = std::move(length);
      add_row("risk_cap", "risk_cap", std::move(risk), Sense::le, objective.epsilon);
      std::snprintf(buf, sizeof buf, "objective: path length subject to risk <= %.17g", objective.epsilon);
      m.notes.push_back(buf);
      break;
    }
    case LpObjective::Kind::weighted: {
      const NormBounds& b = objective.bounds;
      const double w = objective.weight;
      double s1 = 0.0, s2 = 0.0;
      if (b.length_hi > b.length_lo) {
        s1 = w / (b.length_hi - b.length_lo);
        m.objective_constant -= s1 * b.length_lo;
      } else {
        m.objective_degenerate = true;
      }
      if (b.energy_hi > b.energy_lo) {
        s2 = (1.0 - w) / (b.energy_hi - b.energy_lo);
        m.objective_constant -= s2 * b.energy_lo;
      } else {
        m.objective_degenerate = true;
      }
      for (LpTerm& t : length) t.coef *= s1;
      for (LpTerm& t : energy) t.coef *= s2;
      m.objective = std::move(length);
      m.objective.insert(m.objective.end(), energy.begin(), energy.end());
      std::snprintf(buf, sizeof buf, "objective: weighted normalized length/energy, w = %.17g, constant %.17g omitted",
                    w, m.objective_constant);
      m.notes.push_back(buf);
      if (m.objective_degenerate) m.notes.push_back("degenerate normalization range: its term is dropped");
      break;
    }
  }
  return m;
}

inline double row_activity(const LpRow& row, std::span<const double> values) {
  double s = 0.0;
  for (const LpTerm& t : row.terms) s += t.coef * values[static_cast<std::size_t>(t.var)];
  return s;
}

inline bool row_satisfied(const LpRow& row, std::span<const double> values, double tol = 1e-9) {
  const double a = row_activity(row, values);
  const double slack = tol * std::max(1.0, std::abs(row.rhs));
  switch (row.sense) {
    case Sense::le: return a <= row.rhs + slack;
    case Sense::ge: return a >= row.rhs - slack;
    case Sense::eq: return std::abs(a - row.rhs) <= slack;
  }
  return false;
}

/// Indices of rows the values violate, including variable-bound violations
/// reported as row index -1.
inline std::vector<int> violated_rows(const MilpModel& m, std::span<const double> values, double tol = 1e-9) {
  std::vector<int> out;
  for (std::size_t v = 0; v < m.variables.size(); ++v) {
    const double x = values[v];
    const bool ok = m.variables[v].kind == VarKind::free || (m.variables[v].kind == VarKind::binary ? (x == 0.0 || x == 1.0) : x >= 0.0);
    if (!ok) {
      out.push_back(-1);
      break;
    }
  }
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    if (!row_satisfied(m.rows[r], values, tol)) out.push_back(static_cast<int>(r));
  }
  return out;
}

inline double objective_value(const MilpModel& m, std::span<const double> values) {
  double s = m.objective_constant;
  for (const LpTerm& t : m.objective) s += t.coef * values[static_cast<std::size_t>(t.var)];
  return s;
}

/// Variable values that encode a chromosome. X and U follow the path; the
/// altitude change of each used arc is taken from the chromosome's levels,
/// with ascent on y and descent on yp (a level flight selects y). Unused
/// arcs are all zero with y = 1.
inline std::vector<double> assignment_values(const MilpModel& m, const Environment& env, const Chromosome& ch) {
  std::vector<double> v(m.variables.size(), 0.0);
  const auto h = env.levels();
  for (CellId i = 0; i < env.cell_count(); ++i) {
    for (CellId j : env.successors(i)) v[static_cast<std::size_t>(m.var(detail::arc_name("y", i, j)))] = 1.0;
  }
  for (std::size_t t = 0; t + 1 < ch.cells.size(); ++t) {
    const CellId i = ch.cells[t], j = ch.cells[t + 1];
    const int k = ch.entry_levels[t + 1];
    v[static_cast<std::size_t>(m.var(detail::x_name(i, j, k)))] = 1.0;
    if (t > 0) v[static_cast<std::size_t>(m.var(detail::u_name(ch.cells[t - 1], i, j, k, ch.entry_levels[t])))] = 1.0;
    const double delta = h[static_cast<std::size_t>(k)] - h[static_cast<std::size_t>(ch.entry_levels[t])];
    auto set = [&](const char* prefix, double x) { v[static_cast<std::size_t>(m.var(detail::arc_name(prefix, i, j)))] = x; };
    set("D", delta);
    set("Dp", std::max(delta, 0.0));
    set("Dm", std::max(-delta, 0.0));
    set("y", delta >= 0.0 ? 1.0 : 0.0);
    set("yp", delta >= 0.0 ? 0.0 : 1.0);
    set("Pp", std::max(delta, 0.0));
    set("Pm", std::max(-delta, 0.0));
  }
  return v;
}

struct Corruption {
  std::string family;  ///< family the change is aimed at
  std::string description;
  std::vector<double> values;
};

/// Deliberate single-purpose corruptions of a valid assignment, one per row
/// family that the instance allows to be broken. Used to confirm that every
/// emitted family actually constrains something.
inline std::vector<Corruption> corruptions(const MilpModel& m, const Environment& env, const Chromosome& ch) {
  const std::vector<double> base = assignment_values(m, env, ch);
  const int K = env.level_count();
  const auto h = env.levels();
  const CellId A = env.start(), N = env.goal();
  std::vector<Corruption> out;
  auto at = [&](std::vector<double>& v, const std::string& name) -> double& { return v[static_cast<std::size_t>(m.var(name))]; };
  auto used_arc = [&](CellId i, CellId j) {
    for (std::size_t t = 0; t + 1 < ch.cells.size(); ++t) {
      if (ch.cells[t] == i && ch.cells[t + 1] == j) return true;
    }
    return false;
  };
  std::set<CellId> on_path(ch.cells.begin(), ch.cells.end());
  // An arc that the path neither uses nor touches, for the split families.
  std::pair<CellId, CellId> spare{-1, -1};
  for (CellId i = 0; i < env.cell_count() && spare.first < 0; ++i) {
    for (CellId j : env.successors(i)) {
      if (!used_arc(i, j)) {
        spare = {i, j};
        break;
      }
    }
  }

  {
    auto v = base;
    at(v, detail::x_name(ch.cells[0], ch.cells[1], ch.entry_levels[1])) = 0.0;
    out.push_back({"flow_start", "first arc removed", std::move(v)});
  }
  {
    auto v = base;
    const std::size_t n = ch.cells.size();
    at(v, detail::x_name(ch.cells[n - 2], ch.cells[n - 1], ch.entry_levels[n - 1])) = 0.0;
    out.push_back({"flow_goal", "last arc removed", std::move(v)});
  }
  if (ch.cells.size() >= 3) {
    auto v = base;
    at(v, detail::x_name(ch.cells[1], ch.cells[2], ch.entry_levels[2])) = 0.0;
    out.push_back({"flow_balance", "second arc removed", std::move(v)});
  } else {
    for (CellId j : env.successors(A)) {
      if (j == N) continue;
      auto v = base;
      at(v, detail::x_name(A, j, 0)) = 1.0;
      out.push_back({"flow_balance", "extra arc out of the start into a dead end", std::move(v)});
      break;
    }
  }
  if (!env.successors(N).empty()) {
    auto v = base;
    at(v, detail::x_name(N, env.successors(N).front(), 0)) = 1.0;
    out.push_back({"flow_terminal", "arc leaving the goal", std::move(v)});
  }
  [&] {
    for (CellId j = 0; j < env.cell_count(); ++j) {
      if (j == A) continue;
      for (CellId i : env.predecessors(j)) {
        for (int k = 0; k < K; ++k) {
          if (h[static_cast<std::size_t>(k)] < env.cell(j).obstacle_height) {
            auto v = base;
            at(v, detail::x_name(i, j, k)) = 1.0;
            out.push_back({"alt_floor", "entry below an obstacle", std::move(v)});
            return;
          }
        }
      }
    }
    // No obstacle to undercut: stacking every level on one arc pulls the
    // relaxed left-hand side below the bound.
    if (K >= 2) {
      const CellId j = ch.cells[1];
      auto v = base;
      for (int k = 0; k < K; ++k) at(v, detail::x_name(ch.cells[0], j, k)) = 1.0;
      out.push_back({"alt_floor", "every level set on one arc", std::move(v)});
    }
  }();
  [&] {
    for (CellId j = 0; j < env.cell_count(); ++j) {
      if (j == A) continue;
      for (CellId i : env.predecessors(j)) {
        double stacked = 0.0;
        for (int k = 0; k < K; ++k) {
          stacked += h[static_cast<std::size_t>(k)];
          if (h[static_cast<std::size_t>(k)] > env.cell(j).max_altitude || stacked > env.cell(j).max_altitude) {
            auto v = base;
            for (int q = 0; q <= k; ++q) at(v, detail::x_name(i, j, q)) = 1.0;
            out.push_back({"alt_ceiling", "entry above a ceiling", std::move(v)});
            return;
          }
        }
      }
    }
  }();
  {
    auto v = base;
    at(v, detail::arc_name("D", ch.cells[0], ch.cells[1])) += 1.0;
    out.push_back({"delta_start", "first altitude change shifted", std::move(v)});
  }
  [&] {
    for (CellId i = 0; i < env.cell_count(); ++i) {
      if (i == A) continue;
      for (CellId j : env.successors(i)) {
        auto v = base;
        at(v, detail::arc_name("D", i, j)) += 1.0;
        out.push_back({"delta_link", "altitude change shifted", std::move(v)});
        return;
      }
    }
  }();
  [&] {
    for (CellId i = 0; i < env.cell_count(); ++i) {
      if (i == A) continue;
      for (CellId j : env.successors(i)) {
        for (CellId g : env.predecessors(i)) {
          auto both = base;
          at(both, detail::x_name(i, j, 0)) = 1.0;
          at(both, detail::x_name(g, i, 0)) = 1.0;
          at(both, detail::u_name(g, i, j, 0, 0)) = 0.0;
          out.push_back({"prod_lower", "both arcs set, product cleared", std::move(both)});
          auto lone = base;
          at(lone, detail::x_name(i, j, 0)) = 0.0;
          at(lone, detail::x_name(g, i, 0)) = 0.0;
          at(lone, detail::u_name(g, i, j, 0, 0)) = 1.0;
          out.push_back({"prod_upper", "product set with both arcs clear", lone});
          out.push_back({"prod_upper_x", "product set with both arcs clear", std::move(lone)});
          return;
        }
      }
    }
  }();
  if (spare.first >= 0) {
    const auto [i, j] = spare;
    auto split = [&](const char* family, const char* what, double y, double yp, double dp, double dm, double pp,
                     double pm, double d) {
      auto v = base;
      at(v, detail::arc_name("y", i, j)) = y;
      at(v, detail::arc_name("yp", i, j)) = yp;
      at(v, detail::arc_name("Dp", i, j)) = dp;
      at(v, detail::arc_name("Dm", i, j)) = dm;
      at(v, detail::arc_name("Pp", i, j)) = pp;
      at(v, detail::arc_name("Pm", i, j)) = pm;
      at(v, detail::arc_name("D", i, j)) = d;
      out.push_back({family, what, std::move(v)});
    };
    split("split", "ascent without a matching change", 1, 0, 1, 0, 0, 0, 0);
    split("split_choice", "both selectors set", 1, 1, 0, 0, 0, 0, 0);
    split("split_link", "product without a matching change", 1, 0, 0, 0, 1, 0, 0);
    split("asc_lower", "ascent product below the ascent", 1, 0, 1, 1, 0, 0, 0);
    split("asc_upper", "ascent product above the ascent", 1, 0, 0, 0, 1, 1, 0);
    split("asc_on", "ascent product with its selector off", 0, 1, 1, 1, 1, 1, 0);
    split("desc_lower", "descent product below the descent", 0, 1, 1, 1, 0, 0, 0);
    split("desc_upper", "descent product above the descent", 0, 1, 0, 0, 1, 1, 0);
    split("desc_on", "descent product with its selector off", 1, 0, 1, 1, 1, 1, 0);
  }
  return out;
}

namespace detail {

inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Appends " + c name" terms, wrapping before `width` columns.
inline void write_terms(std::string& out, std::string line, const std::vector<LpTerm>& terms,
                        const std::vector<LpVariable>& vars, std::size_t width = 200) {
  if (terms.empty()) line += " 0 " + vars.front().name;
  bool first = true;
  for (const LpTerm& t : terms) {
    std::string piece;
    const double mag = std::abs(t.coef);
    if (t.coef < 0.0) {
      piece = " - ";
    } else if (!first) {
      piece = " + ";
    } else {
      piece = " ";
    }
    if (mag != 1.0) piece += format_number(mag) + " ";
    piece += vars[static_cast<std::size_t>(t.var)].name;
    if (line.size() + piece.size() > width) {
      out += line + "\n";
      line = "   ";
    }
    line += piece;
    first = false;
  }
  out += line;
}

}  // namespace detail

/// CPLEX LP text of the model.
inline std::string to_lp_text(const MilpModel& m) {
  std::string out;
  for (const auto& note : m.notes) out += "\\ " + note + "\n";
  out += "Minimize\n";
  detail::write_terms(out, " obj:", m.objective, m.variables);
  out += "\nSubject To\n";
  for (const LpRow& r : m.rows) {
    detail::write_terms(out, " " + r.name + ":", r.terms, m.variables);
    out += r.sense == Sense::le ? " <= " : r.sense == Sense::ge ? " >= " : " = ";
    out += detail::format_number(r.rhs) + "\n";
  }
  out += "Bounds\n";
  for (const LpVariable& v : m.variables) {
    if (v.kind == VarKind::free) out += " " + v.name + " free\n";
  }
  out += "Binaries\n";
  for (const LpVariable& v : m.variables) {
    if (v.kind == VarKind::binary) out += " " + v.name + "\n";
  }
  out += "End\n";
  return out;
}

}  // namespace uavpath

#endif  // UAVPATH_MILP_HPP_
