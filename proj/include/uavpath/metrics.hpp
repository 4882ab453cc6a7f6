#ifndef UAVPATH_METRICS_HPP_
#define UAVPATH_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavpath/pareto.hpp"

namespace uavpath {

/// Exact area dominated by `front` and bounded by `reference` (both
/// objectives minimized). Points that do not strictly dominate the
/// reference are skipped and counted in `excluded`; dominated points are
/// filtered by the sweep itself.
inline double hypervolume_2d(std::span<const Point2> front, const Point2& reference, std::size_t* excluded = nullptr) {
  std::vector<Point2> pts;
  pts.reserve(front.size());
  std::size_t skipped = 0;
  for (const Point2& p : front) {
    if (p[0] < reference[0] && p[1] < reference[1]) {
      pts.push_back(p);
    } else {
      ++skipped;
    }
  }
  if (excluded) *excluded = skipped;
  std::sort(pts.begin(), pts.end());
  // Staircase of non-dominated points: x ascending, y strictly descending.
  std::vector<Point2> stairs;
  for (const Point2& p : pts) {
    if (stairs.empty() || p[1] < stairs.back()[1]) stairs.push_back(p);
  }
  double area = 0.0;
  for (std::size_t i = 0; i < stairs.size(); ++i) {
    const double next_x = i + 1 < stairs.size() ? stairs[i + 1][0] : reference[0];
    area += (next_x - stairs[i][0]) * (reference[1] - stairs[i][1]);
  }
  return area;
}

inline double hypervolume_2d(const std::vector<Point2>& front, const Point2& reference, std::size_t* excluded = nullptr) {
  return hypervolume_2d(std::span<const Point2>(front), reference, excluded);
}

/// Componentwise maximum of the union scaled by 1.1; zero components
/// become `epsilon`.
inline Point2 shared_reference(std::span<const Point2> points, double epsilon = 1e-6) {
  if (points.empty()) throw std::invalid_argument("shared_reference: no points");
  Point2 ref = points.front();
  for (const Point2& p : points) {
    ref[0] = std::max(ref[0], p[0]);
    ref[1] = std::max(ref[1], p[1]);
  }
  for (double& r : ref) {
    if (r == 0.0) {
      r = epsilon;
    } else {
      r += 0.1 * std::abs(r);
    }
  }
  return ref;
}

inline Point2 shared_reference(const std::vector<Point2>& points, double epsilon = 1e-6) {
  return shared_reference(std::span<const Point2>(points), epsilon);
}

/// Pearson correlation coefficient.
inline double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("pearson: length mismatch");
  if (xs.size() < 2) throw std::domain_error("pearson: need at least two points");
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw std::domain_error("pearson: zero variance, correlation undefined");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

struct FrontSummary {
  std::string instance;
  std::string algorithm;
  bool tuned = false;
  double hv = 0.0;
  double relative = 0.0;  ///< percent of the instance's best HV
  std::size_t front_size = 0;
};

struct TableRow {
  std::string instance;
  std::vector<FrontSummary> entries;  ///< input order preserved
  bool degenerate = false;            ///< best HV was zero
};

/// Formats a relative-HV percentage with two decimals. Only an exact best
/// may print as 100.00; anything below it is truncated, never rounded up.
inline std::string format_percent(double relative, bool is_best) {
  char buf[32];
  if (is_best) {
    std::snprintf(buf, sizeof buf, "%.2f", 100.0);
  } else {
    const double truncated = std::min(std::floor(relative * 100.0) / 100.0, 99.99);
    std::snprintf(buf, sizeof buf, "%.2f", std::max(truncated, 0.0));
  }
  return buf;
}

/// Groups summaries by instance (first-seen order) and expresses every HV
/// as a percentage of the best HV on that instance.
inline std::vector<TableRow> relative_hv_table(std::span<const FrontSummary> summaries) {
  std::vector<TableRow> rows;
  std::map<std::string, std::size_t> index;
  for (const FrontSummary& s : summaries) {
    auto [it, inserted] = index.emplace(s.instance, rows.size());
    if (inserted) rows.push_back({s.instance, {}, false});
    rows[it->second].entries.push_back(s);
  }
  for (TableRow& row : rows) {
    double best = 0.0;
    for (const auto& e : row.entries) best = std::max(best, e.hv);
    row.degenerate = !(best > 0.0);
    for (auto& e : row.entries) e.relative = row.degenerate ? 0.0 : 100.0 * e.hv / best;
  }
  return rows;
}

inline std::vector<TableRow> relative_hv_table(const std::vector<FrontSummary>& summaries) {
  return relative_hv_table(std::span<const FrontSummary>(summaries));
}

/// Percent string of an entry within its row.
inline std::string percent_cell(const TableRow& row, const FrontSummary& e) {
  if (row.degenerate) return "n/a";
  double best = 0.0;
  for (const auto& o : row.entries) best = std::max(best, o.hv);
  return format_percent(e.relative, e.hv == best) + "%";
}

}  // namespace uavpath

#endif  // UAVPATH_METRICS_HPP_
