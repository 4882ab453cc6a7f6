#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"

using namespace uavpath;

namespace {

// Exact raster integration: the dominated region is a union of rectangles
// whose corners lie on the grid spanned by all point and reference
// coordinates; each grid cell is either fully in or fully out.
double raster_hv(const std::vector<Point2>& front, const Point2& ref) {
  std::vector<double> xs{ref[0]}, ys{ref[1]};
  for (const auto& p : front) {
    if (p[0] < ref[0] && p[1] < ref[1]) {
      xs.push_back(p[0]);
      ys.push_back(p[1]);
    }
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
      const double cx = (xs[i] + xs[i + 1]) / 2, cy = (ys[j] + ys[j + 1]) / 2;
      const bool covered = std::any_of(front.begin(), front.end(), [&](const Point2& p) {
        return p[0] < ref[0] && p[1] < ref[1] && p[0] <= cx && p[1] <= cy;
      });
      if (covered) area += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
    }
  }
  return area;
}

}  // namespace

TEST(Hypervolume, WorkedExample) {
  EXPECT_EQ(hypervolume_2d(std::vector<Point2>{{1, 3}, {2, 2}, {3, 1}}, {4, 4}), 6.0);
}

TEST(Hypervolume, SinglePointAndEmptyFront) {
  EXPECT_EQ(hypervolume_2d(std::vector<Point2>{{0, 0}}, {1, 1}), 1.0);
  EXPECT_EQ(hypervolume_2d(std::vector<Point2>{}, {1, 1}), 0.0);
}

TEST(Hypervolume, PointsNotDominatingReferenceAreCounted) {
  std::size_t excluded = 0;
  EXPECT_EQ(hypervolume_2d(std::vector<Point2>{{0, 0}, {2, 0.5}, {1, 1}}, {1, 1}, &excluded), 1.0);
  EXPECT_EQ(excluded, 2u);
}

TEST(Hypervolume, MatchesRasterOracle) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Point2> front;
    const std::size_t n = 1 + rng.below(50);
    for (std::size_t i = 0; i < n; ++i) front.push_back({rng.uniform(0, 10), rng.uniform(0, 10)});
    const Point2 ref{rng.uniform(8, 12), rng.uniform(8, 12)};
    const double a = hypervolume_2d(front, ref), b = raster_hv(front, ref);
    EXPECT_LE(std::abs(a - b), 1e-9 * std::max(1.0, b));
  }
}

TEST(Hypervolume, OrderInvariantAndMonotone) {
  Rng rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point2> front;
    for (int i = 0; i < 20; ++i) front.push_back({rng.uniform(0, 1), rng.uniform(0, 1)});
    const Point2 ref{1.5, 1.5};
    const double hv = hypervolume_2d(front, ref);
    std::vector<Point2> shuffled = front;
    std::reverse(shuffled.begin(), shuffled.end());
    EXPECT_EQ(hypervolume_2d(shuffled, ref), hv);
    EXPECT_GE(hypervolume_2d(front, Point2{2.0, 1.7}), hv);
    // A dominated point changes nothing.
    std::vector<Point2> with = front;
    with.push_back({1.4, 1.4});
    const auto nd = nondominated_indices(std::span<const Point2>(front));
    with.back() = {front[nd[0]][0] + 0.01, front[nd[0]][1] + 0.01};
    EXPECT_DOUBLE_EQ(hypervolume_2d(with, ref), hv);
    // A point dominating part of the front adds area.
    with.push_back({-0.1, -0.1});
    EXPECT_GT(hypervolume_2d(with, ref), hv);
  }
}

TEST(SharedReference, ScalingRule) {
  EXPECT_EQ(shared_reference(std::vector<Point2>{{10, 1}, {2, 5}}), (Point2{11.0, 5.5}));
  EXPECT_EQ(shared_reference(std::vector<Point2>{{0, 1}}), (Point2{1e-6, 1.1}));
  const std::vector<Point2> pts{{1, 2}, {2, 1}};
  const Point2 r = shared_reference(pts);
  for (const auto& p : pts) EXPECT_TRUE(p[0] < r[0] && p[1] < r[1]);
}

TEST(Pearson, PerfectCorrelations) {
  const std::vector<double> xs{1, 2, 3, 4, 7};
  std::vector<double> ys, neg;
  for (double x : xs) {
    ys.push_back(2 * x + 1);
    neg.push_back(-x);
  }
  EXPECT_NEAR(pearson(xs, ys), 1.0, 1e-15);
  EXPECT_NEAR(pearson(xs, neg), -1.0, 1e-15);
  EXPECT_THROW(pearson(std::vector<double>{1, 1, 1, 1, 1}, ys), std::domain_error);
  EXPECT_THROW(pearson(std::vector<double>{1}, std::vector<double>{2}), std::domain_error);
}

TEST(Pearson, FlatInstanceLengthEnergyIsExactlyLinear) {
  const Environment env = testing_support::random_instance(10, 1, 0.0, 3);
  const auto d = cli::correlation_sample(env, DroneParams{}, 1000, 4);
  ASSERT_TRUE(d.r.has_value());
  EXPECT_NEAR(*d.r, 1.0, 1e-12);
}

TEST(RelativeTable, DefinitionAndFormatting) {
  const std::vector<FrontSummary> s{{"T1-1", "spea2", false, 10.0, 0, 0}, {"T1-1", "nsga2", false, 8.0, 0, 0}, {"T1-1", "nsga3", false, 9.0, 0, 0}};
  const auto rows = relative_hv_table(s);
  ASSERT_EQ(rows.size(), 1u);
  std::vector<std::string> cells;
  for (const auto& e : rows[0].entries) cells.push_back(percent_cell(rows[0], e));
  EXPECT_EQ(cells, (std::vector<std::string>{"100.00%", "80.00%", "90.00%"}));
}

TEST(RelativeTable, SingleAlgorithmIsBest) {
  const auto rows = relative_hv_table(std::vector<FrontSummary>{{"T2-3", "nsga2", true, 0.37, 0, 0}});
  EXPECT_EQ(percent_cell(rows[0], rows[0].entries[0]), "100.00%");
}

TEST(RelativeTable, ExactlyOneWinnerPerRow) {
  Rng rng(33);
  std::vector<FrontSummary> s;
  for (int i = 0; i < 30; ++i) {
    for (const char* a : {"spea2", "nsga2", "nsga3"}) {
      // Near-ties must not print as a second 100.00.
      s.push_back({"T" + std::to_string(i), a, false, 1.0 - rng.uniform01() * 1e-6, 0, 0});
    }
  }
  for (const auto& row : relative_hv_table(s)) {
    int winners = 0;
    for (const auto& e : row.entries) {
      const std::string c = percent_cell(row, e);
      winners += c == "100.00%";
      EXPECT_EQ(c.size(), c.find('.') + 4);  // two decimals plus '%'
    }
    EXPECT_EQ(winners, 1);
  }
}

TEST(RelativeTable, ZeroBestIsDegenerate) {
  const auto rows = relative_hv_table(std::vector<FrontSummary>{{"T1-1", "nsga2", false, 0.0, 0, 0}});
  EXPECT_TRUE(rows[0].degenerate);
  EXPECT_EQ(percent_cell(rows[0], rows[0].entries[0]), "n/a");
}

TEST(RelativeTable, FormatPercentNeverRoundsUpToBest) {
  EXPECT_EQ(format_percent(99.999, false), "99.99");
  EXPECT_EQ(format_percent(80.0, false), "80.00");
  EXPECT_EQ(format_percent(100.0, true), "100.00");
}
