#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "support.hpp"

using namespace uavpath;

namespace {

using Fronts = std::vector<std::set<std::size_t>>;

Fronts as_sets(const std::vector<std::vector<std::size_t>>& fronts) {
  Fronts out;
  for (const auto& f : fronts) out.emplace_back(f.begin(), f.end());
  return out;
}

// Peel non-dominated layers by pairwise comparison.
Fronts brute_force_layers(const std::vector<Point2>& pts) {
  Fronts out;
  std::set<std::size_t> left;
  for (std::size_t i = 0; i < pts.size(); ++i) left.insert(i);
  while (!left.empty()) {
    std::set<std::size_t> layer;
    for (std::size_t i : left) {
      bool dominated = false;
      for (std::size_t j : left) {
        if (pts[j][0] <= pts[i][0] && pts[j][1] <= pts[i][1] && (pts[j][0] < pts[i][0] || pts[j][1] < pts[i][1])) dominated = true;
      }
      if (!dominated) layer.insert(i);
    }
    for (std::size_t i : layer) left.erase(i);
    out.push_back(layer);
  }
  return out;
}

}  // namespace

TEST(NondominatedSort, HandExample) {
  const std::vector<Point2> pts{{1, 1}, {2, 2}, {0, 3}};
  EXPECT_EQ(as_sets(fast_nondominated_sort(pts)), (Fronts{{0, 2}, {1}}));
}

TEST(NondominatedSort, IdenticalPointsShareAFront) {
  const std::vector<Point2> pts(6, Point2{2, 2});
  EXPECT_EQ(fast_nondominated_sort(pts).size(), 1u);
}

TEST(NondominatedSort, ChainIsOneFront) {
  const std::vector<Point2> pts{{1, 3}, {2, 2}, {3, 1}};
  EXPECT_EQ(as_sets(fast_nondominated_sort(pts)), (Fronts{{0, 1, 2}}));
}

TEST(NondominatedSort, AgreesWithBruteForce) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(200);
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({static_cast<double>(rng.below(15)), static_cast<double>(rng.below(15))});
    EXPECT_EQ(as_sets(fast_nondominated_sort(pts)), brute_force_layers(pts));
  }
}

TEST(CrowdingDistance, HandExample) {
  const auto cd = crowding_distance(std::vector<Point2>{{1, 3}, {2, 2}, {3, 1}});
  EXPECT_TRUE(std::isinf(cd[0]));
  EXPECT_DOUBLE_EQ(cd[1], 2.0);
  EXPECT_TRUE(std::isinf(cd[2]));
}

TEST(CrowdingDistance, TwoPointsAreBoundaries) {
  const auto cd = crowding_distance(std::vector<Point2>{{1, 3}, {2, 2}});
  EXPECT_TRUE(std::isinf(cd[0]) && std::isinf(cd[1]));
}

TEST(CrowdingDistance, DuplicateInteriorPointGetsZero) {
  const auto cd = crowding_distance(std::vector<Point2>{{1, 3}, {2, 2}, {2, 2}, {3, 1}});
  EXPECT_EQ(std::count(cd.begin(), cd.end(), 0.0), 1);
  EXPECT_EQ(std::count_if(cd.begin(), cd.end(), [](double d) { return d > 0 && std::isfinite(d); }), 1);
}

TEST(CrowdingDistance, ZeroRangeContributesNothing) {
  const auto cd = crowding_distance(std::vector<Point2>{{1, 5}, {2, 5}, {3, 5}});
  EXPECT_DOUBLE_EQ(cd[1], 1.0);
}

TEST(ReferencePoints, Lattice) {
  EXPECT_EQ(reference_points<2>(1), (std::vector<Point2>{{1, 0}, {0, 1}}));
  EXPECT_EQ(reference_points<2>(4), (std::vector<Point2>{{1, 0}, {0.75, 0.25}, {0.5, 0.5}, {0.25, 0.75}, {0, 1}}));
  EXPECT_EQ(reference_points<2>(12).size(), 13u);
  EXPECT_EQ(reference_points<3>(4).size(), 15u);
  for (const auto& p : reference_points<3>(6)) EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-12);
}

TEST(Spea2Fitness, SinglePoint) {
  EXPECT_DOUBLE_EQ(spea2_fitness(std::vector<Point2>{{3, 4}})[0], 0.5);
}

TEST(Spea2Fitness, RawFitnessByHand) {
  const auto f = spea2_fitness(std::vector<Point2>{{0, 0}, {1, 1}});
  // k = 1, sigma = sqrt(2) for both.
  const double density = 1.0 / (std::sqrt(2.0) + 2.0);
  EXPECT_DOUBLE_EQ(f[0], density);
  EXPECT_DOUBLE_EQ(f[1], 1.0 + density);
}

TEST(Spea2Fitness, NondominatedSetsScoreBelowOne) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point2> pts;
    const std::size_t n = 2 + rng.below(40);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = rng.uniform01();
      pts.push_back({x, 1.0 - x});
    }
    for (double f : spea2_fitness(pts)) EXPECT_LT(f, 1.0);
  }
}

TEST(Spea2Truncate, RemovesMostCrowdedFirst) {
  const std::vector<Point2> pts{{0, 10}, {5, 5}, {5.1, 4.9}, {10, 0}};
  const auto keep = spea2_truncate(std::span<const Point2>(pts), 3);
  ASSERT_EQ(keep.size(), 3u);
  EXPECT_EQ(keep[0], 0u);
  EXPECT_EQ(keep[2], 3u);
  EXPECT_EQ(spea2_truncate(std::span<const Point2>(pts), 10).size(), 4u);
}

TEST(Dominance, Semantics) {
  EXPECT_TRUE(dominates(Point2{1, 1}, Point2{1, 2}));
  EXPECT_FALSE(dominates(Point2{1, 1}, Point2{1, 1}));
  EXPECT_FALSE(dominates(Point2{0, 2}, Point2{1, 1}));
  EXPECT_TRUE(dominates(Point3{1, 1, 1}, Point3{1, 1, 2}));
}
