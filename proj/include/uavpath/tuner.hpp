#ifndef UAVPATH_TUNER_HPP_
#define UAVPATH_TUNER_HPP_

#include <cstdint>
#include <vector>

#include "uavpath/evolution.hpp"
#include "uavpath/metrics.hpp"
#include "uavpath/random.hpp"

namespace uavpath {

struct TunerConfig {
  int configurations = 100;
  /// Evaluations granted to each candidate run.
  std::int64_t evaluation_budget = 1000;
  double crossover_lo = 0.5, crossover_hi = 1.0;
  double mutation_lo = 0.01, mutation_hi = 0.5;
  double rate_lo = 0.05, rate_hi = 0.5;
  int population_lo = 10, population_hi = 100;
};

struct TunerCandidate {
  AlgoConfig config;
  double hv = 0.0;
};

struct TunerResult {
  AlgoConfig best;
  std::vector<TunerCandidate> candidates;
};

/// Random search over crossover probability, mutation probability, mutation
/// rate and (even) population size. Candidates are scored by the HV of their
/// elite archives under bounds and a reference point shared by all of them;
/// the returned configuration keeps `base`'s budget and seed.
inline TunerResult tune(const Environment& env, const DroneParams& params, const AlgoConfig& base,
                        const TunerConfig& tc = {}) {
  Rng rng(splitmix64(base.seed ^ hash_name("tuner")));
  TunerResult out;
  std::vector<RunResult> runs;
  for (int c = 0; c < tc.configurations; ++c) {
    AlgoConfig cfg = base;
    cfg.operators.crossover_probability = rng.uniform(tc.crossover_lo, tc.crossover_hi);
    cfg.operators.mutation_probability = rng.uniform(tc.mutation_lo, tc.mutation_hi);
    cfg.operators.mutation_rate = rng.uniform(tc.rate_lo, tc.rate_hi);
    cfg.population_size = 2 * rng.uniform_int(tc.population_lo / 2, tc.population_hi / 2);
    cfg.population_size = std::max(cfg.population_size, 4);
    cfg.archive_size = cfg.population_size;
    cfg.evaluation_budget = std::max<std::int64_t>(tc.evaluation_budget, cfg.population_size);
    cfg.seed = rng.next();
    runs.push_back(run(env, params, cfg));
    out.candidates.push_back({cfg, 0.0});
  }
  NormBounds bounds = detail::empty_bounds();
  for (const auto& r : runs) {
    for (const auto& e : r.archive) bounds.include(e.objectives);
  }
  std::vector<std::vector<Point2>> mapped(runs.size());
  std::vector<Point2> all;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (const auto& e : runs[i].archive) mapped[i].push_back(metric_point(e.objectives, bounds));
    all.insert(all.end(), mapped[i].begin(), mapped[i].end());
  }
  std::size_t best = 0;
  if (!all.empty()) {
    const Point2 ref = shared_reference(all);
    for (std::size_t i = 0; i < runs.size(); ++i) {
      out.candidates[i].hv = hypervolume_2d(mapped[i], ref);
      if (out.candidates[i].hv > out.candidates[best].hv) best = i;
    }
  }
  out.best = base;
  if (!out.candidates.empty()) {
    const AlgoConfig& w = out.candidates[best].config;
    out.best.operators.crossover_probability = w.operators.crossover_probability;
    out.best.operators.mutation_probability = w.operators.mutation_probability;
    out.best.operators.mutation_rate = w.operators.mutation_rate;
    out.best.population_size = w.population_size;
    out.best.archive_size = w.archive_size;
    if (out.best.evaluation_budget < out.best.population_size) out.best.evaluation_budget = out.best.population_size;
  }
  return out;
}

}  // namespace uavpath

#endif  // UAVPATH_TUNER_HPP_
