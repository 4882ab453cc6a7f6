#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support.hpp"

using namespace uavpath;

namespace {

AlgoConfig small(Algorithm a, std::int64_t budget, int pop = 20) {
  AlgoConfig c;
  c.algorithm = a;
  c.population_size = pop;
  c.archive_size = pop;
  c.evaluation_budget = budget;
  c.reference_divisions = 12;
  c.seed = 5;
  return c;
}

Individual individual(double length, double energy, double risk, double weight) {
  Individual ind;
  ind.chromosome.weight = weight;
  ind.objectives = {length, energy, risk};
  return ind;
}

}  // namespace

class EachAlgorithm : public ::testing::TestWithParam<Algorithm> {};

TEST_P(EachAlgorithm, ZeroGenerationsGiveInitialFront) {
  const Environment env = testing_support::random_instance(6, 3, 0.2, 3);
  const DroneParams p;
  std::vector<ObjectiveVector> initial;
  const RunResult r = run(env, p, small(GetParam(), 20), [&](int g, std::span<const Individual> inds) {
    if (g == 0) {
      for (const auto& i : inds) initial.push_back(i.objectives);
    }
  });
  EXPECT_EQ(r.generations, 0);
  EXPECT_EQ(r.evaluations, 20);
  NormBounds b = NormBounds::of(initial);
  std::vector<Point2> pts;
  for (const auto& z : initial) pts.push_back(metric_point(z, b));
  std::vector<Point2> expected;
  for (std::size_t i : nondominated_indices(std::span<const Point2>(pts))) expected.push_back(pts[i]);
  std::vector<Point2> got;
  for (const auto& m : r.front) got.push_back(metric_point(m.objectives, r.bounds));
  std::sort(expected.begin(), expected.end());
  expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
  std::sort(got.begin(), got.end());
  got.erase(std::unique(got.begin(), got.end()), got.end());
  EXPECT_EQ(got, expected);
}

TEST_P(EachAlgorithm, SameSeedSameResult) {
  const Environment env = testing_support::capped_instance(7, 3, 4);
  const DroneParams p;
  const RunResult a = run(env, p, small(GetParam(), 600));
  const RunResult b = run(env, p, small(GetParam(), 600));
  ASSERT_EQ(a.front.size(), b.front.size());
  for (std::size_t i = 0; i < a.front.size(); ++i) {
    EXPECT_EQ(a.front[i].chromosome, b.front[i].chromosome);
    EXPECT_EQ(a.front[i].objectives, b.front[i].objectives);
  }
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) EXPECT_EQ(a.trace[i].hv, b.trace[i].hv);
}

TEST_P(EachAlgorithm, TraceNeverDecreasesAndFinalBeatsInitial) {
  const Environment env = testing_support::random_instance(4, 3, 0.2, 9);
  const RunResult r = run(env, DroneParams{}, small(GetParam(), 1000));
  ASSERT_GE(r.trace.size(), 2u);
  for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_GE(r.trace[i].hv, r.trace[i - 1].hv);
  EXPECT_GE(r.trace.back().hv, r.trace.front().hv);
  EXPECT_EQ(r.trace.back().evaluations, r.evaluations);
}

TEST_P(EachAlgorithm, EveryIndividualIsValid) {
  const Environment env = testing_support::capped_instance(8, 4, 6);
  int generations = 0;
  run(env, DroneParams{}, small(GetParam(), 800), [&](int, std::span<const Individual> inds) {
    ++generations;
    for (const auto& i : inds) ASSERT_TRUE(validate(i.chromosome, env).ok());
  });
  EXPECT_GT(generations, 1);
}

TEST_P(EachAlgorithm, HeldPathsStayDistinct) {
  const Environment env = testing_support::capped_instance(8, 4, 9);
  run(env, DroneParams{}, small(GetParam(), 1000), [&](int g, std::span<const Individual> inds) {
    if (g == 0) return;
    // SPEA-II reports offspring followed by its archive; each part is checked alone.
    std::set<std::pair<std::vector<CellId>, std::vector<int>>> seen;
    for (std::size_t k = 0; k < inds.size(); ++k) {
      if (k == 20) seen.clear();
      EXPECT_TRUE(seen.emplace(inds[k].chromosome.cells, inds[k].chromosome.entry_levels).second) << g;
    }
  });
}

TEST_P(EachAlgorithm, FrontIsMutuallyNondominated) {
  const Environment env = testing_support::capped_instance(8, 4, 7);
  const RunResult r = run(env, DroneParams{}, small(GetParam(), 1000));
  ASSERT_FALSE(r.front.empty());
  for (const auto& a : r.front) {
    for (const auto& b : r.front) {
      EXPECT_FALSE(dominates(metric_point(a.objectives, r.bounds), metric_point(b.objectives, r.bounds)));
    }
  }
  for (const auto& a : r.archive) {
    for (const auto& b : r.archive) EXPECT_FALSE(dominates(as_point(a.objectives), as_point(b.objectives)));
  }
}

INSTANTIATE_TEST_SUITE_P(Algorithms, EachAlgorithm, ::testing::Values(Algorithm::nsga2, Algorithm::nsga3, Algorithm::spea2),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Nsga2Select, FillsWholeFrontsThenSplitsByCrowding) {
  // weight 1: the combined value is the normalized length.
  std::vector<Individual> merged;
  merged.push_back(individual(0, 0, 4, 1));   // front 0
  merged.push_back(individual(4, 0, 0, 1));   // front 0
  merged.push_back(individual(1, 0, 5, 1));   // front 1
  merged.push_back(individual(2, 0, 4.5, 1)); // front 1
  merged.push_back(individual(3, 0, 4.2, 1)); // front 1
  merged.push_back(individual(5, 0, 1, 1));   // front 1
  merged.push_back(individual(4, 0, 6, 1));   // front 2
  const auto chosen = detail::nsga2_select(merged, 4);
  ASSERT_EQ(chosen.size(), 4u);
  std::vector<double> lengths;
  for (const auto& c : chosen) lengths.push_back(c.objectives.length);
  // Front 0 whole, then the two boundary points of front 1.
  EXPECT_EQ(lengths, (std::vector<double>{0, 4, 1, 5}));
}

TEST(DropDuplicates, KeepsFirstOccurrenceUnlessShort) {
  std::vector<Individual> pool;
  for (int k : {0, 1, 0, 2, 1}) {
    Individual ind = individual(k, k, k, 0.5);
    ind.chromosome.cells = {0, 1};
    ind.chromosome.entry_levels = {0, k};
    pool.push_back(ind);
  }
  auto a = pool;
  detail::drop_duplicates(a, 2);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[2].chromosome.entry_levels[1], 2);
  auto b = pool;
  detail::drop_duplicates(b, 4);
  ASSERT_EQ(b.size(), 4u);
  EXPECT_EQ(b[3].chromosome.entry_levels[1], 0);
}

TEST(Spea2Select, TruncatesOrPadsToCapacity) {
  std::vector<Individual> nd;
  for (int i = 0; i < 10; ++i) nd.push_back(individual(i, 0, 9 - i, 1));
  EXPECT_EQ(detail::spea2_select(nd, 6).size(), 6u);
  std::vector<Individual> mixed = {individual(0, 0, 1, 1), individual(1, 0, 0, 1), individual(2, 0, 2, 1),
                                   individual(3, 0, 3, 1)};
  const auto padded = detail::spea2_select(mixed, 3);
  ASSERT_EQ(padded.size(), 3u);
  EXPECT_EQ(padded[2].objectives.length, 2.0);
}

TEST(AlgoConfigTest, Validation) {
  AlgoConfig c;
  c.population_size = 7;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.evaluation_budget = 10;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_NO_THROW(AlgoConfig{}.validate());
  EXPECT_EQ(parse_algorithm("nsga3"), Algorithm::nsga3);
  EXPECT_THROW(parse_algorithm("moead"), std::invalid_argument);
}

TEST(Tuner, PicksTheBestScoredCandidateDeterministically) {
  const Environment env = testing_support::random_instance(5, 3, 0.2, 2);
  TunerConfig tc;
  tc.configurations = 6;
  tc.evaluation_budget = 200;
  AlgoConfig base = small(Algorithm::nsga2, 400);
  const TunerResult a = tune(env, DroneParams{}, base, tc);
  const TunerResult b = tune(env, DroneParams{}, base, tc);
  ASSERT_EQ(a.candidates.size(), 6u);
  double best = 0.0;
  for (const auto& c : a.candidates) best = std::max(best, c.hv);
  bool found = false;
  for (const auto& c : a.candidates) {
    if (c.hv == best && c.config.operators == a.best.operators && c.config.population_size == a.best.population_size) found = true;
    EXPECT_EQ(c.config.population_size % 2, 0);
    EXPECT_GE(c.config.operators.crossover_probability, 0.5);
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(a.best.evaluation_budget, base.evaluation_budget);
  EXPECT_EQ(a.best.operators, b.best.operators);
}
