#ifndef UAVPATH_EXACT_HPP_
#define UAVPATH_EXACT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "uavpath/environment.hpp"
#include "uavpath/errors.hpp"
#include "uavpath/pareto.hpp"
#include "uavpath/physics.hpp"
#include "uavpath/solution.hpp"

namespace uavpath {

struct EnumerationCaps {
  int max_cells = 25;
  int max_levels = 4;
  /// Longest path in cells; 0 means the number of cells in the grid.
  int max_path_length = 0;
  std::uint64_t max_states = 10'000'000;
};

struct ExactMember {
  Chromosome chromosome;
  ObjectiveVector objectives;
};

/// Exact Pareto set in (length, energy, risk), one member per distinct
/// objective vector.
struct ExactFront {
  std::vector<ExactMember> members;
  std::uint64_t paths = 0;   ///< simple start-to-goal cell paths visited
  std::uint64_t states = 0;  ///< partial (path prefix, level) labels created
};

namespace detail {

inline void check_caps(const Environment& env, const EnumerationCaps& caps) {
  if (env.cell_count() > caps.max_cells) {
    throw TooLargeError("exhaustive search refused: " + std::to_string(env.cell_count()) + " cells exceed the cap of " +
                        std::to_string(caps.max_cells));
  }
  if (env.level_count() > caps.max_levels) {
    throw TooLargeError("exhaustive search refused: " + std::to_string(env.level_count()) +
                        " levels exceed the cap of " + std::to_string(caps.max_levels));
  }
}

}  // namespace detail

/// Visits every simple cell path from start to goal under the five-direction
/// adjacency. Paths end the first time they reach the goal; impassable
/// cells are never entered. Returns the number of paths.
inline std::uint64_t for_each_path(const Environment& env, const EnumerationCaps& caps,
                                   const std::function<void(std::span<const CellId>)>& visit) {
  detail::check_caps(env, caps);
  const std::size_t max_len = caps.max_path_length > 0 ? static_cast<std::size_t>(caps.max_path_length)
                                                       : static_cast<std::size_t>(env.cell_count());
  std::vector<CellId> path{env.start()};
  std::vector<char> used(static_cast<std::size_t>(env.cell_count()), 0);
  used[static_cast<std::size_t>(env.start())] = 1;
  std::uint64_t count = 0;
  auto dfs = [&](auto&& self) -> void {
    const CellId here = path.back();
    if (here == env.goal()) {
      ++count;
      visit(path);
      return;
    }
    if (path.size() >= max_len) return;
    for (CellId next : env.successors(here)) {
      if (used[static_cast<std::size_t>(next)] || !env.passable(next)) continue;
      used[static_cast<std::size_t>(next)] = 1;
      path.push_back(next);
      self(self);
      path.pop_back();
      used[static_cast<std::size_t>(next)] = 0;
    }
  };
  dfs(dfs);
  return count;
}

/// Brute force: every simple path crossed with every admissible entry-level
/// assignment. Throws TooLargeError once more than `caps.max_states`
/// assignments would be produced.
inline std::uint64_t for_each_assignment(const Environment& env, const EnumerationCaps& caps,
                                         const std::function<void(const Chromosome&)>& visit) {
  std::uint64_t produced = 0;
  Chromosome ch;
  for_each_path(env, caps, [&](std::span<const CellId> path) {
    ch.cells.assign(path.begin(), path.end());
    ch.entry_levels.assign(path.size(), env.start_level());
    auto rec = [&](auto&& self, std::size_t t) -> void {
      if (t == path.size()) {
        if (++produced > caps.max_states) {
          throw TooLargeError("exhaustive search refused: more than " + std::to_string(caps.max_states) +
                              " assignments");
        }
        visit(ch);
        return;
      }
      for (int k : env.admissible_levels(path[t])) {
        ch.entry_levels[t] = k;
        self(self, t + 1);
      }
    };
    rec(rec, 1);
  });
  return produced;
}

/// Exact Pareto front by enumeration of simple paths. For each path the
/// entry levels are resolved by a multi-objective label-correcting pass:
/// objectives are sums of per-segment terms that depend only on the two
/// endpoint levels, so a partial assignment dominated by another ending at
/// the same position and level can never complete to a non-dominated
/// solution and is discarded. The result equals the front of the full
/// path-by-assignment cross product.
inline ExactFront enumerate(const Environment& env, const DroneParams& params, const EnumerationCaps& caps = {}) {
  struct Label {
    ObjectiveVector z;
    std::vector<int> levels;
  };
  ExactFront result;
  std::vector<ExactMember> front;
  auto offer = [&](ExactMember m) {
    const Point3 p = {m.objectives.length, m.objectives.energy, m.objectives.risk};
    for (const auto& f : front) {
      const Point3 q = {f.objectives.length, f.objectives.energy, f.objectives.risk};
      if (q == p || dominates(q, p)) return;
    }
    std::erase_if(front, [&](const ExactMember& f) {
      return dominates(p, Point3{f.objectives.length, f.objectives.energy, f.objectives.risk});
    });
    front.push_back(std::move(m));
  };
  auto insert_label = [](std::vector<Label>& bucket, Label label) {
    const Point3 p = {label.z.length, label.z.energy, label.z.risk};
    for (const auto& other : bucket) {
      const Point3 q = {other.z.length, other.z.energy, other.z.risk};
      if (q == p || dominates(q, p)) return;
    }
    std::erase_if(bucket, [&](const Label& other) {
      return dominates(p, Point3{other.z.length, other.z.energy, other.z.risk});
    });
    bucket.push_back(std::move(label));
  };

  const int levels = env.level_count();
  result.paths = for_each_path(env, caps, [&](std::span<const CellId> path) {
    std::vector<std::vector<Label>> current(static_cast<std::size_t>(levels));
    current[static_cast<std::size_t>(env.start_level())].push_back({ObjectiveVector{}, {env.start_level()}});
    for (std::size_t t = 0; t + 1 < path.size(); ++t) {
      std::vector<std::vector<Label>> next(static_cast<std::size_t>(levels));
      for (int k0 = 0; k0 < levels; ++k0) {
        for (const Label& label : current[static_cast<std::size_t>(k0)]) {
          for (int k1 : env.admissible_levels(path[t + 1])) {
            const SegmentTerms s = segment_terms(env, params, path[t], k0, path[t + 1], k1);
            Label extended = label;
            extended.z.length += s.length;
            extended.z.energy += s.energy;
            extended.z.risk += s.risk;
            extended.levels.push_back(k1);
            if (++result.states > caps.max_states) {
              throw TooLargeError("exhaustive search refused: more than " + std::to_string(caps.max_states) +
                                  " partial labels");
            }
            insert_label(next[static_cast<std::size_t>(k1)], std::move(extended));
          }
        }
      }
      current = std::move(next);
    }
    for (auto& bucket : current) {
      for (auto& label : bucket) {
        Chromosome ch;
        ch.cells.assign(path.begin(), path.end());
        ch.entry_levels = std::move(label.levels);
        offer({std::move(ch), label.z});
      }
    }
  });
  // Report objectives exactly as the chromosome evaluator computes them.
  for (auto& m : front) m.objectives = evaluate(m.chromosome, env, params);
  result.members = std::move(front);
  return result;
}

/// One arc of the binary assignment: the drone enters `to` from `from`
/// holding `level`.
struct ArcChoice {
  CellId from = 0;
  CellId to = 0;
  int level = 0;

  friend bool operator==(const ArcChoice&, const ArcChoice&) = default;
};

inline std::vector<ArcChoice> to_assignment(const Chromosome& ch) {
  std::vector<ArcChoice> arcs;
  for (std::size_t t = 0; t + 1 < ch.cells.size(); ++t) arcs.push_back({ch.cells[t], ch.cells[t + 1], ch.entry_levels[t + 1]});
  return arcs;
}

/// Objectives computed straight from the arc/level assignment form: the
/// first arc is measured from the start altitude, and every later arc
/// (i -> j at level k) is paired with every arc entering i (g -> i at level
/// k') through the product of the two indicators. Flow balance and the
/// obstacle/ceiling rules are checked first; a violation throws
/// ContractError naming the rule.
inline ObjectiveVector evaluate_assignment(std::span<const ArcChoice> arcs, const Environment& env,
                                           const DroneParams& params) {
  const CellId start = env.start();
  const CellId goal = env.goal();
  std::map<CellId, int> out_flow, in_flow;
  for (const ArcChoice& a : arcs) {
    if (!env.valid(a.from) || !env.valid(a.to) || !env.adjacent(a.from, a.to)) {
      throw ContractError("assignment: arc " + std::to_string(a.from) + "->" + std::to_string(a.to) +
                          " is not a successor arc");
    }
    if (a.level < 0 || a.level >= env.level_count()) throw ContractError("assignment: level index out of range");
    ++out_flow[a.from];
    ++in_flow[a.to];
  }
  if (out_flow[start] != 1) throw ContractError("assignment: flow leaving the start must equal 1");
  if (in_flow[goal] != 1) throw ContractError("assignment: flow entering the goal must equal 1");
  if (out_flow[goal] != 0) throw ContractError("assignment: flow leaving the goal must be 0");
  for (CellId c = 0; c < env.cell_count(); ++c) {
    if (c == start || c == goal) continue;
    if (out_flow[c] != in_flow[c]) throw ContractError("assignment: flow not conserved at cell " + std::to_string(c));
  }
  for (const ArcChoice& a : arcs) {
    if (a.to == start) continue;
    const double h = env.levels()[static_cast<std::size_t>(a.level)];
    if (h < env.cell(a.to).obstacle_height) throw ContractError("assignment: entry below obstacle at cell " + std::to_string(a.to));
    if (h > env.cell(a.to).max_altitude) throw ContractError("assignment: entry above ceiling at cell " + std::to_string(a.to));
  }

  const auto h = env.levels();
  const double hA = env.start_altitude();
  const double theta = params.theta();
  const double nu = params.speed_mps;
  const double wg = params.weight_kg * params.gravity;
  auto rho = [&](double altitude) {
    return params.sea_level_density * std::pow(1.0 - 2.2558e-5 * altitude, 4.2577);
  };
  auto max_risk = [&](CellId cell, int a, int b) {
    double m = 0.0;
    for (int phi = std::min(a, b); phi <= std::max(a, b); ++phi) m = std::max(m, env.cell(cell).risk[static_cast<std::size_t>(phi)]);
    return m;
  };

  ObjectiveVector z;
  double climb_total = 0.0;
  for (const ArcChoice& a : arcs) {
    const CellCoord p = env.coord(a.from), q = env.coord(a.to);
    const double d = env.cell_size() * ((p.row != q.row && p.col != q.col) ? std::sqrt(2.0) : 1.0);
    const double hk = h[static_cast<std::size_t>(a.level)];
    if (a.from == start) {
      const double delta = hk - hA;
      const double sq = delta * delta + d * d;
      z.length += std::sqrt(sq);
      z.energy += theta / nu * std::sqrt(sq / ((rho(hA) + rho(hk)) / 2.0));
      z.risk += max_risk(start, a.level, env.start_level());
      climb_total += std::max(delta, 0.0);
      continue;
    }
    // Products with every arc entering a.from (the U indicators that are 1).
    double delta = 0.0;
    for (const ArcChoice& in : arcs) {
      if (in.to != a.from) continue;
      const double hk2 = h[static_cast<std::size_t>(in.level)];
      const double diff = hk - hk2;
      const double sq = diff * diff + d * d;
      z.length += std::sqrt(sq);
      z.energy += theta / nu * std::sqrt(sq / ((rho(hk2) + rho(hk)) / 2.0));
      z.risk += max_risk(a.from, a.level, in.level);
      delta += diff;
    }
    climb_total += std::max(delta, 0.0);
  }
  z.energy += wg * climb_total;
  return z;
}

}  // namespace uavpath

#endif  // UAVPATH_EXACT_HPP_
