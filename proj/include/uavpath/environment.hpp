#ifndef UAVPATH_ENVIRONMENT_HPP_
#define UAVPATH_ENVIRONMENT_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "uavpath/errors.hpp"
#include "uavpath/random.hpp"

namespace uavpath {

/// Row-major ground cell index. Row 0 is the north edge, column 0 the west edge.
using CellId = int;

struct CellCoord {
  int row = 0;
  int col = 0;

  friend bool operator==(const CellCoord&, const CellCoord&) = default;
};

/// The five admissible flight directions.
enum class Direction { north, south, east, north_east, south_east };

inline constexpr std::array<Direction, 5> kDirections = {
    Direction::north, Direction::south, Direction::east, Direction::north_east,
    Direction::south_east};

constexpr CellCoord offset(Direction d) noexcept {
  switch (d) {
    case Direction::north: return {-1, 0};
    case Direction::south: return {1, 0};
    case Direction::east: return {0, 1};
    case Direction::north_east: return {-1, 1};
    case Direction::south_east: return {1, 1};
  }
  return {0, 0};
}

constexpr bool is_diagonal(Direction d) noexcept {
  return d == Direction::north_east || d == Direction::south_east;
}

struct GridSpec {
  int rows = 1;
  int cols = 1;
  double cell_size = 1.0;
  /// Altitude of each flight level in meters, strictly increasing.
  std::vector<double> levels;
  CellCoord start;
  CellCoord goal;
  /// Level the drone holds at the start cell.
  int start_level = 0;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct CellData {
  double obstacle_height = 0.0;
  double max_altitude = 0.0;
  /// One collision-risk value in [0, 1] per altitude level.
  std::vector<double> risk;

  friend bool operator==(const CellData&, const CellData&) = default;
};

/// Discretized flight space: ground grid, altitude levels, per-cell
/// obstacles, ceilings and risk. Immutable after construction, so it can be
/// shared freely between concurrent evaluators.
class Environment {
 public:
  Environment(GridSpec spec, std::vector<CellData> cells)
      : spec_(std::move(spec)), cells_(std::move(cells)) {
    check_invariants();
    build_adjacency();
  }

  const GridSpec& spec() const noexcept { return spec_; }
  std::span<const CellData> cells() const noexcept { return cells_; }

  int rows() const noexcept { return spec_.rows; }
  int cols() const noexcept { return spec_.cols; }
  int cell_count() const noexcept { return spec_.rows * spec_.cols; }
  int level_count() const noexcept { return static_cast<int>(spec_.levels.size()); }
  double cell_size() const noexcept { return spec_.cell_size; }
  std::span<const double> levels() const noexcept { return spec_.levels; }
  double altitude(int level) const { return spec_.levels.at(static_cast<std::size_t>(level)); }
  double top_altitude() const noexcept { return spec_.levels.back(); }

  CellId start() const noexcept { return id(spec_.start); }
  CellId goal() const noexcept { return id(spec_.goal); }
  int start_level() const noexcept { return spec_.start_level; }
  double start_altitude() const { return altitude(spec_.start_level); }

  bool contains(CellCoord c) const noexcept {
    return c.row >= 0 && c.row < spec_.rows && c.col >= 0 && c.col < spec_.cols;
  }
  bool valid(CellId c) const noexcept { return c >= 0 && c < cell_count(); }

  CellId id(CellCoord c) const noexcept { return c.row * spec_.cols + c.col; }
  CellCoord coord(CellId c) const noexcept { return {c / spec_.cols, c % spec_.cols}; }

  const CellData& cell(CellId c) const {
    require_cell(c);
    return cells_[static_cast<std::size_t>(c)];
  }

  double risk(CellId c, int level) const {
    return cell(c).risk.at(static_cast<std::size_t>(level));
  }

  /// In-bounds N, S, E, NE, SE neighbours, in that order.
  std::span<const CellId> successors(CellId c) const {
    require_cell(c);
    return succ_[static_cast<std::size_t>(c)];
  }

  /// Exact transpose of successors().
  std::span<const CellId> predecessors(CellId c) const {
    require_cell(c);
    return pred_[static_cast<std::size_t>(c)];
  }

  bool adjacent(CellId from, CellId to) const {
    const auto s = successors(from);
    return std::find(s.begin(), s.end(), to) != s.end();
  }

  /// Horizontal distance between north-west corners of adjacent cells.
  double distance(CellId from, CellId to) const {
    require_cell(to);
    const CellCoord a = coord(from);
    const CellCoord b = coord(to);
    if (!adjacent(from, to)) {
      throw std::domain_error("distance: cell " + std::to_string(to) +
                              " is not a successor of cell " + std::to_string(from));
    }
    const bool diagonal = a.row != b.row && a.col != b.col;
    return diagonal ? spec_.cell_size * std::numbers::sqrt2 : spec_.cell_size;
  }

  /// Whether a drone may enter cell `c` holding `level`: above the obstacle,
  /// at or below the ceiling.
  bool admits(CellId c, int level) const {
    const CellData& d = cell(c);
    if (level < 0 || level >= level_count()) return false;
    const double h = spec_.levels[static_cast<std::size_t>(level)];
    return h >= d.obstacle_height && h <= d.max_altitude;
  }

  /// Ascending list of levels admitted by cell `c`.
  std::span<const int> admissible_levels(CellId c) const {
    require_cell(c);
    return admissible_[static_cast<std::size_t>(c)];
  }

  bool passable(CellId c) const { return !admissible_levels(c).empty(); }

  /// Whether the goal can be reached from `c` through passable cells,
  /// ignoring which cells a particular path has already used.
  bool reaches_goal(CellId c) const {
    require_cell(c);
    return reaches_goal_[static_cast<std::size_t>(c)] != 0;
  }

  friend bool operator==(const Environment& a, const Environment& b) {
    return a.spec_ == b.spec_ && a.cells_ == b.cells_;
  }

 private:
  void require_cell(CellId c) const {
    if (!valid(c)) throw std::domain_error("invalid cell id " + std::to_string(c));
  }

  void check_invariants() const {
    if (spec_.rows < 1 || spec_.cols < 1) throw std::invalid_argument("grid must have at least one row and column");
    if (!(spec_.cell_size > 0.0) || !std::isfinite(spec_.cell_size)) {
      throw std::invalid_argument("cell_size must be positive");
    }
    if (spec_.levels.empty()) throw std::invalid_argument("at least one altitude level is required");
    for (std::size_t k = 0; k < spec_.levels.size(); ++k) {
      if (!std::isfinite(spec_.levels[k]) || spec_.levels[k] < 0.0) {
        throw std::invalid_argument("altitude levels must be finite and non-negative");
      }
      if (k > 0 && !(spec_.levels[k] > spec_.levels[k - 1])) {
        throw std::invalid_argument("altitude levels must be strictly increasing");
      }
    }
    if (!contains(spec_.start)) throw std::invalid_argument("start cell outside the grid");
    if (!contains(spec_.goal)) throw std::invalid_argument("goal cell outside the grid");
    if (spec_.start == spec_.goal) throw std::invalid_argument("start and goal cells coincide");
    if (spec_.goal.col < spec_.start.col) {
      throw std::invalid_argument("goal column lies west of the start column (orientation)");
    }
    if (spec_.start_level < 0 || spec_.start_level >= level_count()) {
      throw std::invalid_argument("start level index out of range");
    }
    if (cells_.size() != static_cast<std::size_t>(cell_count())) {
      throw std::invalid_argument("cell data count does not match grid size");
    }
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      const CellData& d = cells_[c];
      if (!(d.obstacle_height >= 0.0) || !std::isfinite(d.obstacle_height) || !std::isfinite(d.max_altitude)) {
        throw std::invalid_argument("cell " + std::to_string(c) + ": invalid obstacle height or ceiling");
      }
      if (d.risk.size() != spec_.levels.size()) {
        throw std::invalid_argument("cell " + std::to_string(c) + ": risk vector length differs from level count");
      }
      for (double r : d.risk) {
        if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("cell " + std::to_string(c) + ": risk outside [0,1]");
      }
    }
    const CellData& s = cells_[static_cast<std::size_t>(id(spec_.start))];
    const double ha = spec_.levels[static_cast<std::size_t>(spec_.start_level)];
    if (ha < s.obstacle_height || ha > s.max_altitude) {
      throw std::invalid_argument("start altitude violates the start cell's obstacle or ceiling");
    }
    const CellData& g = cells_[static_cast<std::size_t>(id(spec_.goal))];
    const bool goal_ok = std::any_of(spec_.levels.begin(), spec_.levels.end(), [&](double h) {
      return h >= g.obstacle_height && h <= g.max_altitude;
    });
    if (!goal_ok) throw std::invalid_argument("goal cell admits no altitude level");
  }

  void build_adjacency() {
    const auto n = static_cast<std::size_t>(cell_count());
    succ_.assign(n, {});
    pred_.assign(n, {});
    admissible_.assign(n, {});
    for (CellId c = 0; c < cell_count(); ++c) {
      const CellCoord here = coord(c);
      for (Direction d : kDirections) {
        const CellCoord o = offset(d);
        const CellCoord there{here.row + o.row, here.col + o.col};
        if (contains(there)) {
          succ_[static_cast<std::size_t>(c)].push_back(id(there));
          pred_[static_cast<std::size_t>(id(there))].push_back(c);
        }
      }
      for (int k = 0; k < level_count(); ++k) {
        if (admits(c, k)) admissible_[static_cast<std::size_t>(c)].push_back(k);
      }
    }
    // Reverse breadth-first search from the goal over passable cells.
    reaches_goal_.assign(n, 0);
    std::deque<CellId> queue{goal()};
    reaches_goal_[static_cast<std::size_t>(goal())] = 1;
    while (!queue.empty()) {
      const CellId c = queue.front();
      queue.pop_front();
      for (CellId p : pred_[static_cast<std::size_t>(c)]) {
        auto& seen = reaches_goal_[static_cast<std::size_t>(p)];
        if (seen) continue;
        // The start cell is never re-entered: it is marked but not expanded.
        if (p == start()) {
          seen = 1;
          continue;
        }
        if (admissible_[static_cast<std::size_t>(p)].empty()) continue;
        seen = 1;
        queue.push_back(p);
      }
    }
  }

  GridSpec spec_;
  std::vector<CellData> cells_;
  std::vector<std::vector<CellId>> succ_;
  std::vector<std::vector<CellId>> pred_;
  std::vector<std::vector<int>> admissible_;
  std::vector<char> reaches_goal_;
};

/// Free-function forms of the adjacency queries.
inline std::span<const CellId> successors(const Environment& env, CellId cell) {
  return env.successors(cell);
}

inline double distance(const Environment& env, CellId from, CellId to) {
  return env.distance(from, to);
}

/// Breadth-first search over (cell, level) states from (start, start level)
/// to the goal at any admitted level. Level changes along a segment are
/// unrestricted, so a level transition is always available; the search still
/// runs over states to mirror the feasibility definition directly.
inline bool feasible_path_exists(const Environment& env) {
  const int levels = env.level_count();
  std::vector<char> seen(static_cast<std::size_t>(env.cell_count() * levels), 0);
  auto key = [levels](CellId c, int k) { return static_cast<std::size_t>(c * levels + k); };
  std::deque<std::pair<CellId, int>> queue;
  queue.emplace_back(env.start(), env.start_level());
  seen[key(env.start(), env.start_level())] = 1;
  while (!queue.empty()) {
    const auto [c, k] = queue.front();
    queue.pop_front();
    if (c == env.goal()) return true;
    for (CellId next : env.successors(c)) {
      if (next == env.start()) continue;
      for (int nk : env.admissible_levels(next)) {
        if (seen[key(next, nk)]) continue;
        seen[key(next, nk)] = 1;
        queue.emplace_back(next, nk);
      }
    }
  }
  return false;
}

enum class CeilingPolicy {
  unrestricted,  ///< every ceiling equals the top level altitude
  random_caps,   ///< a fraction of cells get a lower, level-snapped ceiling
};

struct GeneratorSettings {
  int rows = 10;
  int cols = 10;
  double cell_size = 10.0;
  int level_count = 4;
  double base_altitude = 10.0;
  double level_spacing = 10.0;
  double obstacle_density = 0.3;
  /// Highest obstacle level; -1 means the top level. A value equal to
  /// level_count produces obstacles taller than every flight level.
  int max_obstacle_level = -1;
  CeilingPolicy ceiling = CeilingPolicy::unrestricted;
  double ceiling_fraction = 0.1;
  int min_ceiling_level = 1;
  double risk_min = 0.0;
  double risk_max = 1.0;
  std::optional<CellCoord> start;
  std::optional<CellCoord> goal;
  int start_level = 0;
  int max_attempts = 100;
};

/// Random instance generator. Obstacles are scattered uniformly with the
/// given density; heights and ceilings snap to level altitudes. Resamples
/// until a start-to-goal path exists.
inline Environment generate(const GeneratorSettings& s, std::uint64_t seed) {
  if (s.rows < 1 || s.cols < 1 || s.rows * s.cols < 2) throw std::invalid_argument("generator: grid too small");
  if (!(s.obstacle_density >= 0.0 && s.obstacle_density < 1.0)) {
    throw std::invalid_argument("generator: obstacle density must lie in [0, 1)");
  }
  if (s.level_count < 1) throw std::invalid_argument("generator: level_count must be positive");
  if (!(s.level_spacing > 0.0) || s.base_altitude < 0.0) throw std::invalid_argument("generator: bad level spacing");
  if (!(s.risk_min >= 0.0 && s.risk_max <= 1.0 && s.risk_min <= s.risk_max)) {
    throw std::invalid_argument("generator: risk range must lie in [0, 1]");
  }
  if (s.start_level < 0 || s.start_level >= s.level_count) throw std::invalid_argument("generator: bad start level");
  const int max_obstacle = s.max_obstacle_level < 0 ? s.level_count - 1 : s.max_obstacle_level;
  if (max_obstacle > s.level_count) throw std::invalid_argument("generator: max_obstacle_level too large");

  Rng rng(seed);
  GridSpec spec;
  spec.rows = s.rows;
  spec.cols = s.cols;
  spec.cell_size = s.cell_size;
  for (int k = 0; k < s.level_count; ++k) spec.levels.push_back(s.base_altitude + k * s.level_spacing);
  spec.start_level = s.start_level;

  const double top = spec.levels.back();
  auto obstacle_altitude = [&](int level) {
    return level < s.level_count ? spec.levels[static_cast<std::size_t>(level)] : top + s.level_spacing;
  };

  for (int attempt = 0; attempt < s.max_attempts; ++attempt) {
    CellCoord start = s.start ? *s.start : CellCoord{rng.uniform_int(0, s.rows - 1), 0};
    CellCoord goal = s.goal ? *s.goal : CellCoord{rng.uniform_int(0, s.rows - 1), s.cols - 1};
    if (goal.col < start.col) {
      // Mirror east-west so that progress runs eastward.
      start.col = s.cols - 1 - start.col;
      goal.col = s.cols - 1 - goal.col;
    }
    if (start == goal) {
      if (s.start && s.goal) throw std::invalid_argument("generator: start equals goal");
      continue;
    }
    spec.start = start;
    spec.goal = goal;

    std::vector<CellData> cells(static_cast<std::size_t>(s.rows * s.cols));
    for (int c = 0; c < s.rows * s.cols; ++c) {
      CellData& d = cells[static_cast<std::size_t>(c)];
      d.max_altitude = top;
      if (max_obstacle >= 1 && rng.bernoulli(s.obstacle_density)) {
        d.obstacle_height = obstacle_altitude(rng.uniform_int(1, max_obstacle));
      }
      if (s.ceiling == CeilingPolicy::random_caps && rng.bernoulli(s.ceiling_fraction)) {
        const int lo = std::clamp(s.min_ceiling_level, 0, s.level_count - 1);
        d.max_altitude = spec.levels[static_cast<std::size_t>(rng.uniform_int(lo, s.level_count - 1))];
      }
      d.risk.resize(static_cast<std::size_t>(s.level_count));
      for (double& r : d.risk) r = rng.uniform(s.risk_min, s.risk_max);
    }
    for (CellCoord endpoint : {start, goal}) {
      CellData& d = cells[static_cast<std::size_t>(endpoint.row * s.cols + endpoint.col)];
      d.obstacle_height = 0.0;
      d.max_altitude = top;
    }
    Environment env(spec, std::move(cells));
    if (feasible_path_exists(env)) return env;
  }
  throw GenerationError("generator: no feasible instance after " + std::to_string(s.max_attempts) + " attempts");
}

}  // namespace uavpath

#endif  // UAVPATH_ENVIRONMENT_HPP_
