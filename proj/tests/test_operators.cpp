#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "support.hpp"

using namespace uavpath;
using testing_support::Builder;

TEST(Initialize, TwoCellGridHasOneChromosome) {
  const Environment env = Builder(1, 2, {10.0}, {0, 0}, {0, 1}).build();
  Rng rng(1);
  const Chromosome ch = initialize(env, rng);
  EXPECT_EQ(ch.cells, (std::vector<CellId>{0, 1}));
  EXPECT_EQ(ch.entry_levels, (std::vector<int>{0, 0}));
}

TEST(Initialize, SingleRowMustClimbOverObstacle) {
  Builder b(1, 3, {10.0, 20.0, 30.0}, {0, 0}, {0, 2});
  b.at(0, 1).obstacle_height = 30.0;
  const Environment env = b.build();
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const Chromosome ch = initialize(env, rng);
    ASSERT_EQ(ch.cells.size(), 3u);
    EXPECT_GE(ch.entry_levels[1], 2);
  }
}

TEST(Initialize, EmptyGridAlwaysValid) {
  const Environment env = testing_support::random_instance(10, 4, 0.0, 1);
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) EXPECT_TRUE(validate(initialize(env, rng), env).ok());
}

TEST(Initialize, DeterministicPerSeed) {
  const Environment env = testing_support::capped_instance(8, 3, 4);
  Rng a(7), b(7);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(initialize(env, a), initialize(env, b));
}

TEST(SampleEntryLevel, ImpassableCellThrows) {
  Builder b(2, 3, {10.0}, {0, 0}, {0, 2});
  b.at(1, 1).obstacle_height = 15.0;
  const Environment env = b.build();
  Rng rng(1);
  EXPECT_THROW(sample_entry_level(env, env.id({1, 1}), 0, rng), std::domain_error);
}

TEST(SampleEntryLevel, FallsThroughWhenPreviousLevelIsBlocked) {
  Builder b(1, 2, {10.0, 20.0, 30.0, 40.0}, {0, 0}, {0, 1});
  b.at(0, 1).obstacle_height = 20.0;
  const Environment env = b.build();
  Rng rng(5);
  std::map<int, int> counts;
  const int n = 30000;
  for (int i = 0; i < n; ++i) ++counts[sample_entry_level(env, 1, 0, rng)];
  // Rule a gives level 1; rules b (falling through) and c are uniform on {1,2,3}.
  const double expected[] = {0.0, 1.0 / 3 + 2.0 / 9, 2.0 / 9, 2.0 / 9};
  EXPECT_EQ(counts[0], 0);
  double chi2 = 0.0;
  for (int k = 1; k <= 3; ++k) chi2 += std::pow(counts[k] - n * expected[k], 2) / (n * expected[k]);
  EXPECT_LT(chi2, 9.210);  // chi-square, 2 dof, alpha 0.01
}

TEST(SampleEntryLevel, MixtureMatchesThreeEqualRules) {
  Builder b(1, 2, {10.0, 20.0, 30.0, 40.0, 50.0}, {0, 0}, {0, 1});
  b.at(0, 1).obstacle_height = 20.0;
  b.at(0, 1).max_altitude = 40.0;
  const Environment env = b.build();
  Rng rng(6);
  // Previous level 2 is admitted: P(1) = 1/3 + 1/9, P(2) = 1/3 + 1/9, P(3) = 1/9.
  const double expected[] = {0.0, 4.0 / 9, 4.0 / 9, 1.0 / 9, 0.0};
  std::map<int, int> counts;
  const int n = 30000;
  for (int i = 0; i < n; ++i) ++counts[sample_entry_level(env, 1, 2, rng)];
  EXPECT_EQ(counts[0] + counts[4], 0);
  double chi2 = 0.0;
  for (int k = 1; k <= 3; ++k) chi2 += std::pow(counts[k] - n * expected[k], 2) / (n * expected[k]);
  EXPECT_LT(chi2, 9.210);
}

TEST(SampleEntryLevel, OpenCellRulesAgreeOnLowLevel) {
  const Environment env = Builder(1, 2, {10.0, 20.0, 30.0}, {0, 0}, {0, 1}).build();
  Rng rng(8);
  std::map<int, int> counts;
  const int n = 30000;
  for (int i = 0; i < n; ++i) ++counts[sample_entry_level(env, 1, 0, rng)];
  const double expected[] = {2.0 / 3 + 1.0 / 9, 1.0 / 9, 1.0 / 9};
  double chi2 = 0.0;
  for (int k = 0; k < 3; ++k) chi2 += std::pow(counts[k] - n * expected[k], 2) / (n * expected[k]);
  EXPECT_LT(chi2, 9.210);
}

TEST(Crossover, IdenticalParentsReproduce) {
  const Environment env = testing_support::capped_instance(8, 3, 2);
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const Chromosome p = initialize(env, rng);
    auto [a, b] = crossover(p, p, env, rng);
    EXPECT_EQ(a.cells, p.cells);
    EXPECT_EQ(b.cells, p.cells);
    EXPECT_EQ(a.entry_levels, p.entry_levels);
  }
}

TEST(Crossover, DirectMergeWhenAlleleIsASuccessor) {
  // p1 and p2 share the prefix (1,0) -> (1,1); from (1,1) p1 goes E, p2 goes SE.
  const Environment e = Builder(3, 4, {10.0}, {1, 0}, {2, 3}).build();
  const auto id = [&](int r, int c) { return e.id({r, c}); };
  const Chromosome p1{{id(1, 0), id(1, 1), id(1, 2), id(2, 3)}, {0, 0, 0, 0}, 0.2};
  const Chromosome p2{{id(1, 0), id(1, 1), id(2, 2), id(2, 3)}, {0, 0, 0, 0}, 0.8};
  ASSERT_TRUE(validate(p1, e).ok());
  ASSERT_TRUE(validate(p2, e).ok());
  Rng rng(1);
  bool saw_merge = false;
  for (int i = 0; i < 200; ++i) {
    auto [c1, c2] = crossover(p1, p2, e, rng);
    EXPECT_TRUE(validate(c1, e).ok());
    EXPECT_TRUE(validate(c2, e).ok());
    EXPECT_GE(c1.weight, 0.2 - 1e-12);
    EXPECT_LE(c1.weight, 0.8 + 1e-12);
    saw_merge = saw_merge || c1.cells == std::vector<CellId>{id(1, 0), id(1, 1), id(2, 2), id(2, 3)};
  }
  EXPECT_TRUE(saw_merge);
}

TEST(Crossover, LoopRemovalRestoresSimplePath) {
  Chromosome ch{{0, 1, 2, 1, 3}, {0, 0, 1, 2, 0}, 0.5};
  EXPECT_TRUE(detail::remove_loops(ch));
  EXPECT_EQ(ch.cells, (std::vector<CellId>{0, 1, 3}));
  EXPECT_EQ(ch.entry_levels, (std::vector<int>{0, 0, 0}));
  Chromosome clean{{0, 1, 3}, {0, 0, 0}, 0.5};
  EXPECT_FALSE(detail::remove_loops(clean));
}

TEST(Crossover, ClosureOnRandomParents) {
  const Environment env = testing_support::capped_instance(10, 4, 3);
  Rng rng(11);
  OperatorStats stats;
  for (int i = 0; i < 10000; ++i) {
    const Chromosome a = initialize(env, rng), b = initialize(env, rng);
    auto [c1, c2] = crossover(a, b, env, rng, {}, &stats);
    ASSERT_TRUE(validate(c1, env).ok()) << validate(c1, env).describe();
    ASSERT_TRUE(validate(c2, env).ok()) << validate(c2, env).describe();
    EXPECT_EQ(c1.cells.front(), env.start());
    EXPECT_EQ(c2.cells.back(), env.goal());
  }
  EXPECT_EQ(stats.crossovers, 10000u);
}

TEST(Crossover, LoopTrimDoesNotLengthenFlatPaths) {
  const Environment env = testing_support::random_instance(8, 1, 0.0, 5);
  Rng rng(12);
  for (int i = 0; i < 500; ++i) {
    Chromosome ch = initialize(env, rng);
    const Chromosome other = initialize(env, rng);
    const std::size_t cut = 1 + rng.below(ch.size() - 1);
    // Splice raw, then trim; compare with the untrimmed walk's length.
    Chromosome raw = detail::splice(ch, cut, other, 0);
    double before = 0.0;
    for (std::size_t t = 0; t + 1 < raw.size(); ++t) {
      if (env.adjacent(raw.cells[t], raw.cells[t + 1])) before += env.distance(raw.cells[t], raw.cells[t + 1]);
    }
    Chromosome trimmed = raw;
    detail::remove_loops(trimmed);
    double after = 0.0;
    for (std::size_t t = 0; t + 1 < trimmed.size(); ++t) {
      if (env.adjacent(trimmed.cells[t], trimmed.cells[t + 1])) after += env.distance(trimmed.cells[t], trimmed.cells[t + 1]);
    }
    EXPECT_LE(after, before + 1e-9);
  }
}

TEST(Mutate, ZeroProbabilityIsIdentityOnLevels) {
  const Environment env = testing_support::capped_instance(8, 4, 6);
  Rng rng(13);
  OperatorConfig cfg;
  cfg.mutation_probability = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Chromosome ch = initialize(env, rng);
    EXPECT_EQ(mutate(ch, cfg, env, rng), ch);
  }
}

TEST(Mutate, FullRateKeepsLevelsInBounds) {
  const Environment env = testing_support::capped_instance(8, 4, 7);
  Rng rng(14);
  OperatorConfig cfg;
  cfg.mutation_probability = 1.0;
  cfg.mutation_rate = 1.0;
  for (int i = 0; i < 2000; ++i) {
    const Chromosome ch = initialize(env, rng);
    const Chromosome m = mutate(ch, cfg, env, rng);
    EXPECT_EQ(m.cells, ch.cells);
    EXPECT_EQ(m.entry_levels.front(), ch.entry_levels.front());
    for (std::size_t t = 1; t < m.size(); ++t) EXPECT_TRUE(env.admits(m.cells[t], m.entry_levels[t]));
    EXPECT_GE(m.weight, 0.0);
    EXPECT_LE(m.weight, 1.0);
  }
}

TEST(Mutate, ClosureOnRandomChromosomes) {
  const Environment env = testing_support::capped_instance(10, 4, 8);
  Rng rng(15);
  OperatorConfig cfg;
  cfg.mutation_probability = 0.7;
  for (int i = 0; i < 10000; ++i) ASSERT_TRUE(validate(mutate(initialize(env, rng), cfg, env, rng), env).ok());
}

TEST(OperatorConfigTest, RejectsOutOfRangeValues) {
  OperatorConfig cfg;
  cfg.crossover_probability = 1.5;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.mutation_rate = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  EXPECT_NO_THROW(OperatorConfig{}.validate());
}
