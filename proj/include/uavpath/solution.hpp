#ifndef UAVPATH_SOLUTION_HPP_
#define UAVPATH_SOLUTION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <unordered_set>
#include <vector>

#include "uavpath/environment.hpp"
#include "uavpath/errors.hpp"
#include "uavpath/physics.hpp"

namespace uavpath {

/// Two-row path encoding: visited cells and the level held on entering each
/// of them, plus the chromosome's own scalarization weight.
struct Chromosome {
  std::vector<CellId> cells;
  std::vector<int> entry_levels;
  double weight = 0.5;

  std::size_t size() const noexcept { return cells.size(); }
  std::size_t segments() const noexcept { return cells.empty() ? 0 : cells.size() - 1; }

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

struct ObjectiveVector {
  double length = 0.0;  ///< total 3D path length (m)
  double energy = 0.0;  ///< translation plus climb energy (J)
  double risk = 0.0;    ///< sum of per-segment maximum risk

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

enum class Violation {
  empty,
  length_mismatch,
  invalid_cell,
  wrong_start,
  wrong_goal,
  wrong_start_level,
  invalid_level,
  not_adjacent,
  revisit,
  below_obstacle,
  above_ceiling,
  bad_weight,
};

inline const char* rule_text(Violation v) {
  switch (v) {
    case Violation::empty: return "path has fewer than two cells";
    case Violation::length_mismatch: return "cell and level rows differ in length";
    case Violation::invalid_cell: return "cell id outside the grid";
    case Violation::wrong_start: return "path must leave the start cell";
    case Violation::wrong_goal: return "path must end at the goal cell";
    case Violation::wrong_start_level: return "start cell must be held at the start altitude";
    case Violation::invalid_level: return "level index out of range";
    case Violation::not_adjacent: return "consecutive cells must be successors";
    case Violation::revisit: return "no cell may be visited twice";
    case Violation::below_obstacle: return "entry altitude below the cell's obstacle";
    case Violation::above_ceiling: return "entry altitude above the cell's ceiling";
    case Violation::bad_weight: return "weight outside [0, 1]";
  }
  return "unknown";
}

struct ValidityIssue {
  Violation kind;
  std::size_t index;  ///< gene (cell position) the issue refers to
};

struct ValidityReport {
  std::vector<ValidityIssue> issues;

  bool ok() const noexcept { return issues.empty(); }
  bool has(Violation v) const {
    return std::any_of(issues.begin(), issues.end(), [v](const ValidityIssue& i) { return i.kind == v; });
  }
  std::string describe() const {
    std::string out;
    for (const auto& i : issues) {
      if (!out.empty()) out += "; ";
      out += "gene " + std::to_string(i.index) + ": " + rule_text(i.kind);
    }
    return out.empty() ? "valid" : out;
  }
};

/// Checks the chromosome against flow, adjacency, no-revisit and
/// obstacle/ceiling rules. Never throws on semantic violations.
inline ValidityReport validate(const Chromosome& ch, const Environment& env) {
  ValidityReport report;
  auto add = [&](Violation v, std::size_t i) { report.issues.push_back({v, i}); };
  if (ch.cells.size() != ch.entry_levels.size()) add(Violation::length_mismatch, 0);
  if (ch.cells.size() < 2) {
    add(Violation::empty, 0);
    return report;
  }
  if (!(ch.weight >= 0.0 && ch.weight <= 1.0)) add(Violation::bad_weight, 0);
  const std::size_t n = std::min(ch.cells.size(), ch.entry_levels.size());
  if (ch.cells.front() != env.start()) add(Violation::wrong_start, 0);
  if (ch.cells.back() != env.goal()) add(Violation::wrong_goal, ch.cells.size() - 1);
  if (!ch.entry_levels.empty() && ch.entry_levels.front() != env.start_level()) add(Violation::wrong_start_level, 0);

  std::unordered_set<CellId> seen;
  for (std::size_t t = 0; t < ch.cells.size(); ++t) {
    const CellId c = ch.cells[t];
    if (!env.valid(c)) {
      add(Violation::invalid_cell, t);
      continue;
    }
    if (!seen.insert(c).second) add(Violation::revisit, t);
    if (t + 1 < ch.cells.size() && env.valid(ch.cells[t + 1]) && !env.adjacent(c, ch.cells[t + 1])) {
      add(Violation::not_adjacent, t);
    }
    if (t >= n) continue;
    const int k = ch.entry_levels[t];
    if (k < 0 || k >= env.level_count()) {
      add(Violation::invalid_level, t);
      continue;
    }
    if (t == 0) continue;
    const double h = env.altitude(k);
    if (h < env.cell(c).obstacle_height) add(Violation::below_obstacle, t);
    if (h > env.cell(c).max_altitude) add(Violation::above_ceiling, t);
  }
  return report;
}

/// Per-segment evaluation intermediates.
struct SegmentTerms {
  double horizontal = 0.0;  ///< direct distance between the cells
  double climb = 0.0;       ///< signed altitude change
  double ascent = 0.0;      ///< max(climb, 0)
  double descent = 0.0;     ///< max(-climb, 0)
  double length = 0.0;
  double density = 0.0;     ///< mean of endpoint densities
  double energy = 0.0;
  double risk = 0.0;        ///< max departing-cell risk over traversed levels
};

/// Terms of one segment from `from` held at `from_level` into `to`
/// entered at `to_level`.
inline SegmentTerms segment_terms(const Environment& env, const DroneParams& params, CellId from, int from_level,
                                  CellId to, int to_level) {
  SegmentTerms s;
  const double h0 = env.altitude(from_level);
  const double h1 = env.altitude(to_level);
  s.horizontal = env.distance(from, to);
  s.climb = h1 - h0;
  s.ascent = std::max(s.climb, 0.0);
  s.descent = std::max(-s.climb, 0.0);
  s.length = std::sqrt(s.climb * s.climb + s.horizontal * s.horizontal);
  s.density = average_density(h0, h1, params);
  s.energy = segment_energy(s.horizontal, s.climb, s.density, params);
  const auto& risk = env.cell(from).risk;
  const auto [lo, hi] = std::minmax(from_level, to_level);
  s.risk = *std::max_element(risk.begin() + lo, risk.begin() + hi + 1);
  return s;
}

inline std::vector<SegmentTerms> segment_terms(const Chromosome& ch, const Environment& env, const DroneParams& params) {
  std::vector<SegmentTerms> out;
  out.reserve(ch.segments());
  for (std::size_t t = 0; t + 1 < ch.cells.size(); ++t) {
    out.push_back(segment_terms(env, params, ch.cells[t], ch.entry_levels[t], ch.cells[t + 1], ch.entry_levels[t + 1]));
  }
  return out;
}

/// Length, energy and risk of a valid chromosome. Sums run left to right
/// along the path.
inline ObjectiveVector evaluate(const Chromosome& ch, const Environment& env, const DroneParams& params) {
  if (const auto report = validate(ch, env); !report.ok()) {
    throw ContractError("evaluate: invalid chromosome (" + report.describe() + ")");
  }
  ObjectiveVector z;
  for (std::size_t t = 0; t + 1 < ch.cells.size(); ++t) {
    const SegmentTerms s =
        segment_terms(env, params, ch.cells[t], ch.entry_levels[t], ch.cells[t + 1], ch.entry_levels[t + 1]);
    z.length += s.length;
    z.energy += s.energy;
    z.risk += s.risk;
  }
  return z;
}

/// Min-max bounds used to put length and energy on a common [0, 1] scale.
struct NormBounds {
  double length_lo = 0.0;
  double length_hi = 1.0;
  double energy_lo = 0.0;
  double energy_hi = 1.0;

  template <typename Range>
  static NormBounds of(const Range& objectives) {
    NormBounds b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const ObjectiveVector& z : objectives) b.include(z);
    return b;
  }

  void include(const ObjectiveVector& z) {
    length_lo = std::min(length_lo, z.length);
    length_hi = std::max(length_hi, z.length);
    energy_lo = std::min(energy_lo, z.energy);
    energy_hi = std::max(energy_hi, z.energy);
  }

  friend bool operator==(const NormBounds&, const NormBounds&) = default;
};

struct CombinedPoint {
  double combined = 0.0;  ///< weighted normalized length/energy
  double risk = 0.0;
  bool degenerate = false;  ///< a normalization range was empty

  friend bool operator==(const CombinedPoint&, const CombinedPoint&) = default;
};

/// Clamped min-max normalization; an empty range maps everything to 0.
inline double normalize(double x, double lo, double hi, bool* degenerate = nullptr) {
  if (!(hi > lo)) {
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  return std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
}

/// Weighted sum of normalized length and energy; risk passes through.
inline CombinedPoint combine(const ObjectiveVector& z, double weight, const NormBounds& bounds) {
  CombinedPoint p;
  const double n1 = normalize(z.length, bounds.length_lo, bounds.length_hi, &p.degenerate);
  const double n2 = normalize(z.energy, bounds.energy_lo, bounds.energy_hi, &p.degenerate);
  p.combined = weight * n1 + (1.0 - weight) * n2;
  p.risk = z.risk;
  return p;
}

}  // namespace uavpath

#endif  // UAVPATH_SOLUTION_HPP_
