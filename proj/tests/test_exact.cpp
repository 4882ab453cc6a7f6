#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support.hpp"

using namespace uavpath;
using testing_support::Builder;

namespace {

std::vector<ObjectiveVector> brute_force_front(const Environment& env, const DroneParams& p) {
  std::vector<ObjectiveVector> all;
  for_each_assignment(env, {}, [&](const Chromosome& ch) { all.push_back(evaluate(ch, env, p)); });
  std::vector<ObjectiveVector> front;
  for (const auto& a : all) {
    const bool dominated = std::any_of(all.begin(), all.end(), [&](const ObjectiveVector& b) { return dominates(as_point(b), as_point(a)); });
    if (!dominated && std::find(front.begin(), front.end(), a) == front.end()) front.push_back(a);
  }
  return front;
}

std::set<std::array<double, 3>> point_set(const std::vector<ObjectiveVector>& zs) {
  std::set<std::array<double, 3>> out;
  for (const auto& z : zs) out.insert(as_point(z));
  return out;
}

}  // namespace

TEST(Enumerate, TwoCellGrid) {
  const Environment env = Builder(1, 2, {10.0}, {0, 0}, {0, 1}).build();
  EXPECT_EQ(for_each_assignment(env, {}, [](const Chromosome&) {}), 1u);
  const ExactFront f = enumerate(env, DroneParams{});
  EXPECT_EQ(f.members.size(), 1u);
  EXPECT_EQ(f.paths, 1u);
}

TEST(Enumerate, TwoByTwoGridHasFourSimplePaths) {
  // A = (0,0), N = (0,1): E; SE then N; S then NE; S, E, N.
  const Environment env = Builder(2, 2, {10.0}, {0, 0}, {0, 1}).build();
  std::set<std::vector<CellId>> paths;
  const auto count = for_each_path(env, {}, [&](std::span<const CellId> p) { paths.insert({p.begin(), p.end()}); });
  EXPECT_EQ(count, 4u);
  EXPECT_EQ(paths, (std::set<std::vector<CellId>>{{0, 1}, {0, 3, 1}, {0, 2, 1}, {0, 2, 3, 1}}));
}

TEST(Enumerate, FrontMembersAreValidAndUndominated) {
  Builder b(3, 3, {10.0, 20.0}, {1, 0}, {1, 2});
  b.at(1, 1).obstacle_height = 20.0;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) b.at(r, c).risk = {0.1 * (r + c), 0.05 * (r * 3 + c)};
  }
  const Environment env = b.build();
  const DroneParams p;
  const ExactFront f = enumerate(env, p);
  ASSERT_FALSE(f.members.empty());
  std::vector<ObjectiveVector> all;
  for_each_assignment(env, {}, [&](const Chromosome& ch) { all.push_back(evaluate(ch, env, p)); });
  for (const auto& m : f.members) {
    EXPECT_TRUE(validate(m.chromosome, env).ok());
    for (const auto& z : all) EXPECT_FALSE(dominates(as_point(z), as_point(m.objectives)));
  }
}

TEST(Enumerate, MatchesBruteForceFront) {
  const DroneParams p;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Environment env = testing_support::capped_instance(3, 3 + static_cast<int>(seed % 2), seed);
    std::vector<ObjectiveVector> exact;
    for (const auto& m : enumerate(env, p).members) exact.push_back(m.objectives);
    EXPECT_EQ(point_set(exact), point_set(brute_force_front(env, p))) << seed;
  }
}

TEST(Enumerate, CapsAreEnforced) {
  const Environment big = testing_support::flat_grid(6, 6);
  EXPECT_THROW(enumerate(big, DroneParams{}), TooLargeError);
  const Environment deep = testing_support::flat_grid(3, 3, 5);
  EXPECT_THROW(enumerate(deep, DroneParams{}), TooLargeError);
  EnumerationCaps tight;
  tight.max_states = 10;
  EXPECT_THROW(enumerate(testing_support::flat_grid(4, 4, 3), DroneParams{}, tight), TooLargeError);
  EXPECT_THROW(for_each_assignment(testing_support::flat_grid(4, 4, 3), tight, [](const Chromosome&) {}), TooLargeError);
}

TEST(EvaluateAssignment, SingleFlatArc) {
  Builder b(1, 2, {10.0, 20.0}, {0, 0}, {0, 1});
  b.at(0, 0).risk = {0.3, 0.8};
  const Environment env = b.build();
  const std::vector<ArcChoice> arcs{{0, 1, 0}};
  const ObjectiveVector z = evaluate_assignment(arcs, env, DroneParams{});
  EXPECT_DOUBLE_EQ(z.length, 10.0);
  EXPECT_DOUBLE_EQ(z.risk, 0.3);
}

TEST(EvaluateAssignment, ClimbTermAppearsExactly) {
  const Environment env = Builder(1, 2, {10.0, 20.0}, {0, 0}, {0, 1}).build();
  const DroneParams p;
  const ObjectiveVector up = evaluate_assignment(std::vector<ArcChoice>{{0, 1, 1}}, env, p);
  const double rho = average_density(10.0, 20.0, p);
  const double translation = p.theta() / std::sqrt(rho) * std::hypot(10.0, 10.0) / p.speed_mps;
  EXPECT_NEAR(up.energy - translation, p.weight_kg * p.gravity * 10.0, 1e-9);
}

TEST(EvaluateAssignment, FlowViolationsNameTheRule) {
  const Environment env = testing_support::flat_grid(2, 3);
  auto message = [&](std::vector<ArcChoice> arcs) {
    try {
      evaluate_assignment(arcs, env, DroneParams{});
    } catch (const ContractError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message({{1, 2, 0}, {2, 5, 0}}).find("leaving the start"), std::string::npos);
  EXPECT_NE(message({{0, 1, 0}}).find("entering the goal"), std::string::npos);
  EXPECT_NE(message({{0, 4, 0}, {1, 5, 0}, {4, 5, 0}}).find("flow"), std::string::npos);
  EXPECT_NE(message({{0, 2, 0}}).find("successor"), std::string::npos);
}

TEST(EvaluateAssignment, AgreesWithChromosomeEvaluator) {
  const DroneParams p;
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    const Environment env = testing_support::capped_instance(4 + static_cast<int>(rng.below(6)), 4, rng.next() % 1000);
    const Chromosome ch = initialize(env, rng);
    const ObjectiveVector a = evaluate(ch, env, p);
    const ObjectiveVector b = evaluate_assignment(to_assignment(ch), env, p);
    EXPECT_LT(relative_error(a.length, b.length), 1e-9);
    EXPECT_LT(relative_error(a.energy, b.energy), 1e-9);
    EXPECT_LT(relative_error(a.risk, b.risk), 1e-9);
  }
}
