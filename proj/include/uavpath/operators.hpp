#ifndef UAVPATH_OPERATORS_HPP_
#define UAVPATH_OPERATORS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "uavpath/environment.hpp"
#include "uavpath/errors.hpp"
#include "uavpath/random.hpp"
#include "uavpath/solution.hpp"

namespace uavpath {

struct OperatorConfig {
  double crossover_probability = 0.9;
  double mutation_probability = 0.1;
  /// Fraction of second-row genes resampled by one mutation.
  double mutation_rate = 0.2;
  int max_init_retries = 1000;
  /// Maximum rightward shift of the crossover point; 0 sweeps the whole parent.
  int max_shift = 0;
  double weight_sigma = 0.1;

  void validate() const {
    auto unit = [](double v, const char* name) {
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    };
    unit(crossover_probability, "crossover_probability");
    unit(mutation_probability, "mutation_probability");
    if (!(mutation_rate > 0.0 && mutation_rate <= 1.0)) throw std::invalid_argument("mutation_rate must lie in (0, 1]");
    if (max_init_retries < 1) throw std::invalid_argument("max_init_retries must be positive");
    if (max_shift < 0) throw std::invalid_argument("max_shift must be non-negative");
    if (!(weight_sigma >= 0.0)) throw std::invalid_argument("weight_sigma must be non-negative");
  }

  friend bool operator==(const OperatorConfig&, const OperatorConfig&) = default;
};

struct OperatorStats {
  std::uint64_t init_restarts = 0;
  std::uint64_t crossovers = 0;
  std::uint64_t splice_failures = 0;
  std::uint64_t loop_trims = 0;
  std::uint64_t level_repairs = 0;
  std::uint64_t mutations = 0;

  OperatorStats& operator+=(const OperatorStats& o) {
    init_restarts += o.init_restarts;
    crossovers += o.crossovers;
    splice_failures += o.splice_failures;
    loop_trims += o.loop_trims;
    level_repairs += o.level_repairs;
    mutations += o.mutations;
    return *this;
  }
};

/// Draws the level a drone holds on entering `cell`. Three rules are equally
/// likely: the lowest level clearing the obstacle; keeping
/// `previous_level` when the cell admits it (otherwise the third rule);
/// or a uniform pick among admitted levels.
inline int sample_entry_level(const Environment& env, CellId cell, int previous_level, Rng& rng) {
  const auto admitted = env.admissible_levels(cell);
  if (admitted.empty()) throw std::domain_error("sample_entry_level: cell " + std::to_string(cell) + " is impassable");
  switch (rng.below(3)) {
    case 0:
      return admitted.front();
    case 1:
      if (env.admits(cell, previous_level)) return previous_level;
      [[fallthrough]];
    default:
      return admitted[rng.below(admitted.size())];
  }
}

/// Random constructive path: walk from the start choosing uniformly among
/// unused successors that still lead to the goal, restarting on dead ends.
inline Chromosome initialize(const Environment& env, Rng& rng, const OperatorConfig& cfg = {},
                             OperatorStats* stats = nullptr) {
  std::vector<char> used(static_cast<std::size_t>(env.cell_count()), 0);
  std::vector<CellId> options;
  for (int attempt = 0; attempt < cfg.max_init_retries; ++attempt) {
    Chromosome ch;
    ch.cells.push_back(env.start());
    ch.entry_levels.push_back(env.start_level());
    std::fill(used.begin(), used.end(), 0);
    used[static_cast<std::size_t>(env.start())] = 1;
    bool dead_end = false;
    while (ch.cells.back() != env.goal()) {
      options.clear();
      for (CellId next : env.successors(ch.cells.back())) {
        if (!used[static_cast<std::size_t>(next)] && env.passable(next) && env.reaches_goal(next)) options.push_back(next);
      }
      if (options.empty()) {
        dead_end = true;
        break;
      }
      const CellId next = options[rng.below(options.size())];
      used[static_cast<std::size_t>(next)] = 1;
      ch.entry_levels.push_back(sample_entry_level(env, next, ch.entry_levels.back(), rng));
      ch.cells.push_back(next);
    }
    if (!dead_end) {
      ch.weight = rng.uniform01();
      return ch;
    }
    if (stats) ++stats->init_restarts;
  }
  throw InitializationError("initialize: no path found after " + std::to_string(cfg.max_init_retries) + " attempts");
}

namespace detail {

/// Removes revisit loops: when a cell reappears, everything after its first
/// occurrence up to and including the repeat is dropped. Adjacency is kept
/// because the repeat's successor follows the same cell.
inline bool remove_loops(Chromosome& ch) {
  std::unordered_map<CellId, std::size_t> position;
  Chromosome out;
  out.weight = ch.weight;
  bool trimmed = false;
  for (std::size_t t = 0; t < ch.cells.size(); ++t) {
    const CellId c = ch.cells[t];
    if (auto it = position.find(c); it != position.end()) {
      const std::size_t keep = it->second + 1;
      for (std::size_t r = keep; r < out.cells.size(); ++r) position.erase(out.cells[r]);
      out.cells.resize(keep);
      out.entry_levels.resize(keep);
      trimmed = true;
      continue;
    }
    position.emplace(c, out.cells.size());
    out.cells.push_back(c);
    out.entry_levels.push_back(ch.entry_levels[t]);
  }
  ch = std::move(out);
  return trimmed;
}

/// Resamples entry levels at or after `from` that the cell does not admit.
inline std::uint64_t repair_levels(Chromosome& ch, std::size_t from, const Environment& env, Rng& rng) {
  std::uint64_t repairs = 0;
  for (std::size_t t = std::max<std::size_t>(from, 1); t < ch.cells.size(); ++t) {
    if (!env.admits(ch.cells[t], ch.entry_levels[t])) {
      ch.entry_levels[t] = sample_entry_level(env, ch.cells[t], ch.entry_levels[t - 1], rng);
      ++repairs;
    }
  }
  return repairs;
}

/// head[0..head_end] followed by tail[tail_begin..].
inline Chromosome splice(const Chromosome& head, std::size_t head_end, const Chromosome& tail, std::size_t tail_begin) {
  Chromosome child;
  child.cells.assign(head.cells.begin(), head.cells.begin() + static_cast<std::ptrdiff_t>(head_end + 1));
  child.entry_levels.assign(head.entry_levels.begin(), head.entry_levels.begin() + static_cast<std::ptrdiff_t>(head_end + 1));
  child.cells.insert(child.cells.end(), tail.cells.begin() + static_cast<std::ptrdiff_t>(tail_begin), tail.cells.end());
  child.entry_levels.insert(child.entry_levels.end(), tail.entry_levels.begin() + static_cast<std::ptrdiff_t>(tail_begin),
                            tail.entry_levels.end());
  return child;
}

}  // namespace detail

/// One-point crossover with rightward shift repair.
///
/// A cut point C is drawn on the shorter parent. Child 1 keeps p1 up to C
/// and continues with p2 after C; if p2[C+1] is not a successor of p1[C], the
/// cut on p2 alone moves right until a successor is found. Child 2 keeps p2
/// up to C and continues with p1; on mismatch both cut points move right
/// together (same offset on both parents). A child whose shift budget runs
/// out is replaced by its head parent. Spliced children are cleared of
/// revisit loops and of entry levels their cells do not admit.
inline std::pair<Chromosome, Chromosome> crossover(const Chromosome& p1, const Chromosome& p2, const Environment& env,
                                                   Rng& rng, const OperatorConfig& cfg = {},
                                                   OperatorStats* stats = nullptr) {
  OperatorStats local;
  OperatorStats& st = stats ? *stats : local;
  ++st.crossovers;
  const std::size_t shortest = std::min(p1.size(), p2.size());
  const std::size_t cut = rng.below(shortest - 1);  // cut + 1 exists in both parents
  auto shift_limit = [&](const Chromosome& p) {
    return cfg.max_shift > 0 ? static_cast<std::size_t>(cfg.max_shift) : p.size();
  };

  // Child 1: shift on the second parent only.
  std::optional<Chromosome> child1;
  for (std::size_t s = 0; s <= shift_limit(p2) && cut + 1 + s < p2.size(); ++s) {
    if (env.adjacent(p1.cells[cut], p2.cells[cut + 1 + s])) {
      child1 = detail::splice(p1, cut, p2, cut + 1 + s);
      break;
    }
  }
  // Child 2: shift on both parents in lockstep.
  std::optional<Chromosome> child2;
  for (std::size_t s = 0; s <= shift_limit(p1) && cut + 1 + s < p1.size() && cut + s < p2.size(); ++s) {
    if (env.adjacent(p2.cells[cut + s], p1.cells[cut + 1 + s])) {
      child2 = detail::splice(p2, cut + s, p1, cut + 1 + s);
      break;
    }
  }

  auto finish = [&](std::optional<Chromosome>& child, const Chromosome& fallback, std::size_t junction) {
    if (!child) {
      ++st.splice_failures;
      return fallback;
    }
    if (detail::remove_loops(*child)) ++st.loop_trims;
    st.level_repairs += detail::repair_levels(*child, std::min(junction, child->size() - 1), env, rng);
    return std::move(*child);
  };
  Chromosome c1 = finish(child1, p1, cut + 1);
  Chromosome c2 = finish(child2, p2, cut + 1);
  // Convex blends; written as w2 + a*(w1 - w2) so equal weights stay exact.
  c1.weight = p2.weight + rng.uniform01() * (p1.weight - p2.weight);
  c2.weight = p2.weight + rng.uniform01() * (p1.weight - p2.weight);
  return {std::move(c1), std::move(c2)};
}

/// Second-row mutation. With probability MP, ceil(mu * (length - 1)) distinct
/// non-initial genes are redrawn with sample_entry_level; independently with
/// probability MP the weight receives clamped Gaussian noise.
inline Chromosome mutate(const Chromosome& ch, const OperatorConfig& cfg, const Environment& env, Rng& rng,
                         OperatorStats* stats = nullptr) {
  Chromosome out = ch;
  if (rng.bernoulli(cfg.mutation_probability) && out.size() > 1) {
    const std::size_t genes = out.size() - 1;
    const auto count = std::min<std::size_t>(
        genes, static_cast<std::size_t>(std::ceil(cfg.mutation_rate * static_cast<double>(genes) - 1e-9)));
    // Partial Fisher-Yates over positions 1..length-1.
    std::vector<std::size_t> positions(genes);
    for (std::size_t i = 0; i < genes; ++i) positions[i] = i + 1;
    for (std::size_t i = 0; i < count; ++i) {
      std::swap(positions[i], positions[i + rng.below(genes - i)]);
    }
    std::sort(positions.begin(), positions.begin() + static_cast<std::ptrdiff_t>(count));
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t t = positions[i];
      out.entry_levels[t] = sample_entry_level(env, out.cells[t], out.entry_levels[t - 1], rng);
    }
    if (stats) ++stats->mutations;
  }
  if (rng.bernoulli(cfg.mutation_probability)) {
    out.weight = std::clamp(out.weight + cfg.weight_sigma * rng.normal(), 0.0, 1.0);
  }
  return out;
}

}  // namespace uavpath

#endif  // UAVPATH_OPERATORS_HPP_
