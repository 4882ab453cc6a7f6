#ifndef UAVPATH_EVOLUTION_HPP_
#define UAVPATH_EVOLUTION_HPP_

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "uavpath/environment.hpp"
#include "uavpath/metrics.hpp"
#include "uavpath/operators.hpp"
#include "uavpath/pareto.hpp"
#include "uavpath/physics.hpp"
#include "uavpath/random.hpp"
#include "uavpath/solution.hpp"

namespace uavpath {

enum class Algorithm { nsga2, nsga3, spea2 };

inline constexpr std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::nsga2: return "nsga2";
    case Algorithm::nsga3: return "nsga3";
    case Algorithm::spea2: return "spea2";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
  if (s == "nsga2") return Algorithm::nsga2;
  if (s == "nsga3") return Algorithm::nsga3;
  if (s == "spea2") return Algorithm::spea2;
  throw std::invalid_argument("unknown algorithm '" + std::string(s) + "' (expected nsga2, nsga3 or spea2)");
}

struct AlgoConfig {
  Algorithm algorithm = Algorithm::nsga2;
  int population_size = 100;
  int archive_size = 100;  ///< SPEA2 only
  std::int64_t evaluation_budget = 10000;
  int reference_divisions = 99;  ///< NSGA-III only
  OperatorConfig operators;
  std::uint64_t seed = 1;

  void validate() const {
    if (population_size < 4 || population_size % 2 != 0) {
      throw std::invalid_argument("population_size must be even and at least 4");
    }
    if (evaluation_budget < population_size) throw std::invalid_argument("evaluation_budget must cover the initial population");
    if (archive_size < 1) throw std::invalid_argument("archive_size must be positive");
    if (reference_divisions < 1) throw std::invalid_argument("reference_divisions must be positive");
    operators.validate();
  }
};

struct Individual {
  Chromosome chromosome;
  ObjectiveVector objectives;
  CombinedPoint point;  ///< (combined, risk) under the chromosome's own weight
  int rank = 0;
  double crowding = 0.0;
  double fitness = 0.0;

  Point2 selection_point() const { return {point.combined, point.risk}; }
};

struct ArchiveEntry {
  Chromosome chromosome;
  ObjectiveVector objectives;
  std::int64_t evaluation = 0;  ///< 1-based index of the evaluation that found it
};

struct FrontMember {
  Chromosome chromosome;
  ObjectiveVector objectives;
  CombinedPoint point;
};

struct HvSample {
  int generation = 0;
  std::int64_t evaluations = 0;
  double hv = 0.0;
};

struct RunResult {
  Algorithm algorithm = Algorithm::nsga2;
  /// Non-dominated in (combined at w = 0.5 under `bounds`, risk).
  std::vector<FrontMember> front;
  /// Non-dominated set, in (length, energy, risk), of every evaluated solution.
  std::vector<ArchiveEntry> archive;
  std::vector<HvSample> trace;
  NormBounds bounds;  ///< min/max of length and energy over all evaluations
  Point2 trace_reference{};
  OperatorStats stats;
  std::int64_t evaluations = 0;
  int generations = 0;
  double wall_seconds = 0.0;
};

/// Called once per generation (0 = initial population) with every
/// individual currently held by the algorithm.
using GenerationObserver = std::function<void(int, std::span<const Individual>)>;

/// Point used for every HV measurement: the length/energy blend at equal
/// weight, and the risk.
inline Point2 metric_point(const ObjectiveVector& z, const NormBounds& bounds) {
  return {combine(z, 0.5, bounds).combined, z.risk};
}

inline Point3 as_point(const ObjectiveVector& z) { return {z.length, z.energy, z.risk}; }

namespace detail {

/// Running set of mutually non-dominated objective vectors (all three
/// objectives, distinct vectors only), plus the log of accepted insertions.
class EliteArchive {
 public:
  bool insert(const Chromosome& ch, const ObjectiveVector& z, std::int64_t evaluation) {
    const Point3 p = as_point(z);
    for (const auto& e : entries_) {
      const Point3 q = as_point(e.objectives);
      if (q == p || dominates(q, p)) return false;
    }
    std::erase_if(entries_, [&](const ArchiveEntry& e) { return dominates(p, as_point(e.objectives)); });
    entries_.push_back({ch, z, evaluation});
    history_.emplace_back(z, evaluation);
    return true;
  }

  const std::vector<ArchiveEntry>& entries() const noexcept { return entries_; }
  const std::vector<std::pair<ObjectiveVector, std::int64_t>>& history() const noexcept { return history_; }

 private:
  std::vector<ArchiveEntry> entries_;
  std::vector<std::pair<ObjectiveVector, std::int64_t>> history_;
};

inline NormBounds empty_bounds() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {inf, -inf, inf, -inf};
}

/// Recomputes every individual's combined point against bounds taken from
/// the whole set.
inline void assign_points(std::vector<Individual>& pop) {
  NormBounds b = empty_bounds();
  for (const auto& ind : pop) b.include(ind.objectives);
  for (auto& ind : pop) ind.point = combine(ind.objectives, ind.chromosome.weight, b);
}

/// Drops individuals whose decoded path (cells and entry levels) repeats an
/// earlier one, unless fewer than `keep` distinct ones remain.
inline void drop_duplicates(std::vector<Individual>& pool, std::size_t keep) {
  std::set<std::pair<std::vector<CellId>, std::vector<int>>> seen;
  std::vector<Individual> distinct, repeats;
  for (auto& ind : pool) {
    if (seen.emplace(ind.chromosome.cells, ind.chromosome.entry_levels).second) {
      distinct.push_back(std::move(ind));
    } else {
      repeats.push_back(std::move(ind));
    }
  }
  for (std::size_t i = 0; distinct.size() < keep && i < repeats.size(); ++i) distinct.push_back(std::move(repeats[i]));
  pool = std::move(distinct);
}

inline std::vector<Point2> selection_points(const std::vector<Individual>& pop) {
  std::vector<Point2> pts;
  pts.reserve(pop.size());
  for (const auto& ind : pop) pts.push_back(ind.selection_point());
  return pts;
}

/// Non-dominated sorting plus crowding for every front.
inline std::vector<std::vector<std::size_t>> rank_and_crowd(std::vector<Individual>& pop) {
  const auto pts = selection_points(pop);
  auto fronts = fast_nondominated_sort(pts);
  for (std::size_t f = 0; f < fronts.size(); ++f) {
    std::vector<Point2> front_pts;
    for (std::size_t i : fronts[f]) front_pts.push_back(pts[i]);
    const auto cd = crowding_distance(front_pts);
    for (std::size_t k = 0; k < fronts[f].size(); ++k) {
      pop[fronts[f][k]].rank = static_cast<int>(f);
      pop[fronts[f][k]].crowding = cd[k];
    }
  }
  return fronts;
}

inline std::vector<Individual> take(std::vector<Individual>& pool, const std::vector<std::size_t>& indices) {
  std::vector<Individual> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(std::move(pool[i]));
  return out;
}

/// NSGA-II survivor selection: whole fronts in rank order, the last admitted
/// front split by descending crowding distance.
inline std::vector<Individual> nsga2_select(std::vector<Individual> merged, std::size_t n) {
  assign_points(merged);
  const auto fronts = rank_and_crowd(merged);
  std::vector<std::size_t> chosen;
  for (const auto& front : fronts) {
    if (chosen.size() + front.size() <= n) {
      chosen.insert(chosen.end(), front.begin(), front.end());
      continue;
    }
    std::vector<std::size_t> last = front;
    std::stable_sort(last.begin(), last.end(),
                     [&](std::size_t a, std::size_t b) { return merged[a].crowding > merged[b].crowding; });
    chosen.insert(chosen.end(), last.begin(), last.begin() + static_cast<std::ptrdiff_t>(n - chosen.size()));
    break;
  }
  return take(merged, chosen);
}

/// NSGA-III survivor selection with reference-direction niching on the
/// last admitted front.
inline std::vector<Individual> nsga3_select(std::vector<Individual> merged, std::size_t n,
                                            const std::vector<Point2>& refs, Rng& rng) {
  assign_points(merged);
  const auto pts = selection_points(merged);
  const auto fronts = fast_nondominated_sort(pts);
  for (std::size_t f = 0; f < fronts.size(); ++f) {
    for (std::size_t i : fronts[f]) merged[i].rank = static_cast<int>(f);
  }
  std::vector<std::size_t> chosen;
  std::size_t l = 0;
  while (l < fronts.size() && chosen.size() + fronts[l].size() <= n) {
    chosen.insert(chosen.end(), fronts[l].begin(), fronts[l].end());
    ++l;
  }
  if (chosen.size() == n || l == fronts.size()) return take(merged, chosen);
  const std::vector<std::size_t>& last = fronts[l];

  std::vector<std::size_t> candidates = chosen;
  candidates.insert(candidates.end(), last.begin(), last.end());

  // Normalize: translate by the ideal point, scale by hyperplane intercepts.
  Point2 ideal{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (std::size_t i : candidates) {
    for (std::size_t m = 0; m < 2; ++m) ideal[m] = std::min(ideal[m], pts[i][m]);
  }
  auto translated = [&](std::size_t i) { return Point2{pts[i][0] - ideal[0], pts[i][1] - ideal[1]}; };
  std::array<Point2, 2> extreme{};
  for (std::size_t axis = 0; axis < 2; ++axis) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i : candidates) {
      const Point2 t = translated(i);
      double asf = 0.0;
      for (std::size_t m = 0; m < 2; ++m) asf = std::max(asf, t[m] / (m == axis ? 1.0 : 1e-6));
      if (asf < best) {
        best = asf;
        extreme[axis] = t;
      }
    }
  }
  Point2 intercept{};
  const double det = extreme[0][0] * extreme[1][1] - extreme[0][1] * extreme[1][0];
  bool fallback = std::abs(det) < 1e-12;
  if (!fallback) {
    // Solve [e0; e1] * b = 1, intercepts are 1 / b.
    const double b0 = (extreme[1][1] - extreme[0][1]) / det;
    const double b1 = (extreme[0][0] - extreme[1][0]) / det;
    fallback = !(b0 > 0.0) || !(b1 > 0.0);
    if (!fallback) intercept = {1.0 / b0, 1.0 / b1};
  }
  for (std::size_t m = 0; m < 2; ++m) {
    if (fallback || !(intercept[m] > 1e-10)) {
      double worst = 0.0;
      for (std::size_t i : candidates) worst = std::max(worst, translated(i)[m]);
      intercept[m] = worst > 1e-10 ? worst : 1.0;
    }
  }

  // Associate each candidate with the closest reference direction.
  std::vector<std::size_t> niche(merged.size(), 0);
  std::vector<double> perpendicular(merged.size(), 0.0);
  for (std::size_t i : candidates) {
    const Point2 t = translated(i);
    const Point2 f{t[0] / intercept[0], t[1] / intercept[1]};
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < refs.size(); ++r) {
      const double norm2 = refs[r][0] * refs[r][0] + refs[r][1] * refs[r][1];
      const double proj = (f[0] * refs[r][0] + f[1] * refs[r][1]) / norm2;
      const double dx = f[0] - proj * refs[r][0];
      const double dy = f[1] - proj * refs[r][1];
      const double d = std::sqrt(dx * dx + dy * dy);
      if (d < best) {
        best = d;
        niche[i] = r;
      }
    }
    perpendicular[i] = best;
  }
  std::vector<std::size_t> count(refs.size(), 0);
  for (std::size_t i : chosen) ++count[niche[i]];

  std::vector<char> active(refs.size(), 1);
  std::vector<char> picked(merged.size(), 0);
  std::size_t remaining = n - chosen.size();
  std::vector<std::size_t> lowest;
  std::vector<std::size_t> members;
  while (remaining > 0) {
    lowest.clear();
    std::size_t min_count = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = 0; r < refs.size(); ++r) {
      if (!active[r]) continue;
      if (count[r] < min_count) {
        min_count = count[r];
        lowest.clear();
      }
      if (count[r] == min_count) lowest.push_back(r);
    }
    const std::size_t r = lowest[rng.below(lowest.size())];
    members.clear();
    for (std::size_t i : last) {
      if (!picked[i] && niche[i] == r) members.push_back(i);
    }
    if (members.empty()) {
      active[r] = 0;
      continue;
    }
    std::size_t pick = members.front();
    if (count[r] == 0) {
      for (std::size_t i : members) {
        if (perpendicular[i] < perpendicular[pick]) pick = i;
      }
    } else {
      pick = members[rng.below(members.size())];
    }
    picked[pick] = 1;
    chosen.push_back(pick);
    ++count[r];
    --remaining;
  }
  return take(merged, chosen);
}

/// SPEA2 environmental selection into an archive of `capacity` members.
inline std::vector<Individual> spea2_select(std::vector<Individual> candidates, std::size_t capacity) {
  assign_points(candidates);
  // Density is measured with risk rescaled to the candidates' range.
  auto pts = selection_points(candidates);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& p : pts) {
    lo = std::min(lo, p[1]);
    hi = std::max(hi, p[1]);
  }
  for (auto& p : pts) p[1] = hi > lo ? (p[1] - lo) / (hi - lo) : 0.0;
  const auto fitness = spea2_fitness(pts);
  for (std::size_t i = 0; i < candidates.size(); ++i) candidates[i].fitness = fitness[i];

  std::vector<std::size_t> chosen;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < candidates.size(); ++i) (fitness[i] < 1.0 ? chosen : rest).push_back(i);
  if (chosen.size() > capacity) {
    std::vector<Point2> sub;
    for (std::size_t i : chosen) sub.push_back(pts[i]);
    const auto keep = spea2_truncate(std::span<const Point2>(sub), capacity);
    std::vector<std::size_t> kept;
    for (std::size_t k : keep) kept.push_back(chosen[k]);
    chosen = std::move(kept);
  } else if (chosen.size() < capacity) {
    std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });
    const std::size_t fill = std::min(capacity - chosen.size(), rest.size());
    chosen.insert(chosen.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(fill));
  }
  return take(candidates, chosen);
}

/// Binary tournament.
inline const Individual& tournament(const std::vector<Individual>& pool, Algorithm algorithm, Rng& rng) {
  const Individual& a = pool[rng.below(pool.size())];
  const Individual& b = pool[rng.below(pool.size())];
  switch (algorithm) {
    case Algorithm::nsga2:
      if (a.rank != b.rank) return a.rank < b.rank ? a : b;
      return b.crowding > a.crowding ? b : a;
    case Algorithm::nsga3:
      if (a.rank != b.rank) return a.rank < b.rank ? a : b;
      return rng.bernoulli(0.5) ? a : b;
    case Algorithm::spea2:
      return b.fitness < a.fitness ? b : a;
  }
  return a;
}

}  // namespace detail

/// Runs one evolutionary search until the evaluation budget is spent.
///
/// Selection works in the (combined, risk) plane, where each chromosome
/// blends normalized length and energy with its own weight and the
/// normalization bounds come from the set being selected from. Independently
/// of the algorithm, every evaluated solution is offered to a three-objective
/// elite archive; the HV trace and the reported front are computed from that
/// archive with equal weights and bounds spanning all evaluations, so the
/// trace is measured against one fixed reference point.
inline RunResult run(const Environment& env, const DroneParams& params, const AlgoConfig& cfg,
                     const GenerationObserver& observer = {}) {
  cfg.validate();
  params.validate();
  const auto started = std::chrono::steady_clock::now();
  Rng rng(cfg.seed);
  RunResult result;
  result.algorithm = cfg.algorithm;
  detail::EliteArchive elite;
  NormBounds all = detail::empty_bounds();
  std::int64_t evaluations = 0;
  std::vector<std::int64_t> marks;

  auto evaluated = [&](Chromosome ch) {
    Individual ind;
    ind.objectives = evaluate(ch, env, params);
    ++evaluations;
    all.include(ind.objectives);
    elite.insert(ch, ind.objectives, evaluations);
    ind.chromosome = std::move(ch);
    return ind;
  };

  const auto n = static_cast<std::size_t>(cfg.population_size);
  const auto refs = reference_points<2>(cfg.reference_divisions);
  std::vector<Individual> population;
  std::vector<Individual> archive;  // SPEA2 only
  population.reserve(n);
  for (std::size_t i = 0; i < n; ++i) population.push_back(evaluated(initialize(env, rng, cfg.operators, &result.stats)));
  marks.push_back(evaluations);

  auto notify = [&](int generation) {
    if (!observer) return;
    if (cfg.algorithm == Algorithm::spea2) {
      std::vector<Individual> both = population;
      both.insert(both.end(), archive.begin(), archive.end());
      observer(generation, both);
    } else {
      observer(generation, population);
    }
  };

  if (cfg.algorithm == Algorithm::spea2) {
    archive = detail::spea2_select(population, static_cast<std::size_t>(cfg.archive_size));
  } else {
    detail::assign_points(population);
    detail::rank_and_crowd(population);
  }
  notify(0);

  int generation = 0;
  while (evaluations < cfg.evaluation_budget) {
    const auto want = static_cast<std::size_t>(std::min<std::int64_t>(cfg.population_size, cfg.evaluation_budget - evaluations));
    const auto& pool = cfg.algorithm == Algorithm::spea2 ? archive : population;
    std::vector<Individual> offspring;
    offspring.reserve(want);
    // A child repeating a decoded path already held is replaced by a fresh
    // random path.
    std::set<std::pair<std::vector<CellId>, std::vector<int>>> held;
    for (const auto& ind : pool) held.emplace(ind.chromosome.cells, ind.chromosome.entry_levels);
    auto novel = [&](Chromosome ch) {
      if (!held.emplace(ch.cells, ch.entry_levels).second) {
        ch = initialize(env, rng, cfg.operators, &result.stats);
        held.emplace(ch.cells, ch.entry_levels);
      }
      return ch;
    };
    while (offspring.size() < want) {
      const Individual& a = detail::tournament(pool, cfg.algorithm, rng);
      const Individual& b = detail::tournament(pool, cfg.algorithm, rng);
      Chromosome c1 = a.chromosome;
      Chromosome c2 = b.chromosome;
      if (rng.bernoulli(cfg.operators.crossover_probability)) {
        std::tie(c1, c2) = crossover(a.chromosome, b.chromosome, env, rng, cfg.operators, &result.stats);
      }
      offspring.push_back(evaluated(novel(mutate(c1, cfg.operators, env, rng, &result.stats))));
      if (offspring.size() < want) offspring.push_back(evaluated(novel(mutate(c2, cfg.operators, env, rng, &result.stats))));
    }
    ++generation;
    switch (cfg.algorithm) {
      case Algorithm::nsga2:
      case Algorithm::nsga3: {
        std::vector<Individual> merged = std::move(population);
        merged.insert(merged.end(), std::make_move_iterator(offspring.begin()), std::make_move_iterator(offspring.end()));
        detail::drop_duplicates(merged, n);
        population = cfg.algorithm == Algorithm::nsga2 ? detail::nsga2_select(std::move(merged), n)
                                                       : detail::nsga3_select(std::move(merged), n, refs, rng);
        break;
      }
      case Algorithm::spea2: {
        population = std::move(offspring);
        std::vector<Individual> candidates = population;
        candidates.insert(candidates.end(), archive.begin(), archive.end());
        detail::drop_duplicates(candidates, static_cast<std::size_t>(cfg.archive_size));
        archive = detail::spea2_select(std::move(candidates), static_cast<std::size_t>(cfg.archive_size));
        break;
      }
    }
    marks.push_back(evaluations);
    notify(generation);
  }

  result.evaluations = evaluations;
  result.generations = generation;
  result.bounds = all;
  result.archive = elite.entries();

  // HV trace over the elite archive's insertion log.
  std::vector<Point2> mapped;
  mapped.reserve(elite.history().size());
  for (const auto& [z, when] : elite.history()) mapped.push_back(metric_point(z, all));
  result.trace_reference = shared_reference(mapped);
  std::vector<Point2> seen;
  std::size_t cursor = 0;
  for (std::size_t g = 0; g < marks.size(); ++g) {
    while (cursor < elite.history().size() && elite.history()[cursor].second <= marks[g]) seen.push_back(mapped[cursor++]);
    result.trace.push_back({static_cast<int>(g), marks[g], hypervolume_2d(seen, result.trace_reference)});
  }

  std::vector<Point2> archive_pts;
  for (const auto& e : result.archive) archive_pts.push_back(metric_point(e.objectives, all));
  for (std::size_t i : nondominated_indices(std::span<const Point2>(archive_pts))) {
    const auto& e = result.archive[i];
    result.front.push_back({e.chromosome, e.objectives, combine(e.objectives, 0.5, all)});
  }
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace uavpath

#endif  // UAVPATH_EVOLUTION_HPP_
