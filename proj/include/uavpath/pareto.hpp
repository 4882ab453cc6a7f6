#ifndef UAVPATH_PARETO_HPP_
#define UAVPATH_PARETO_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace uavpath {

/// A point in an M-objective minimization space.
template <std::size_t M>
using Point = std::array<double, M>;

using Point2 = Point<2>;
using Point3 = Point<3>;

/// `a` Pareto-dominates `b` (minimization): no worse everywhere, better somewhere.
template <std::size_t M>
constexpr bool dominates(const Point<M>& a, const Point<M>& b) noexcept {
  bool strictly = false;
  for (std::size_t i = 0; i < M; ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly = true;
  }
  return strictly;
}

/// Deb's fast non-dominated sort. Returns index lists, best front first.
template <std::size_t M>
std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::span<const Point<M>> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated_by_me(n);
  std::vector<std::size_t> domination_count(n, 0);
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if (dominates(points[p], points[q])) {
        dominated_by_me[p].push_back(q);
        ++domination_count[q];
      } else if (dominates(points[q], points[p])) {
        dominated_by_me[q].push_back(p);
        ++domination_count[p];
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (domination_count[p] == 0) current.push_back(p);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t p : current) {
      for (std::size_t q : dominated_by_me[p]) {
        if (--domination_count[q] == 0) next.push_back(q);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

template <std::size_t M>
std::vector<std::vector<std::size_t>> fast_nondominated_sort(const std::vector<Point<M>>& points) {
  return fast_nondominated_sort(std::span<const Point<M>>(points));
}

/// Indices of the non-dominated points. Exact duplicates are all kept.
template <std::size_t M>
std::vector<std::size_t> nondominated_indices(std::span<const Point<M>> points) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      dominated = j != i && dominates(points[j], points[i]);
    }
    if (!dominated) out.push_back(i);
  }
  return out;
}

namespace detail {

template <std::size_t M>
std::vector<double> crowding_of_distinct(std::span<const Point<M>> front) {
  const std::size_t n = front.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> distance(n, 0.0);
  if (n <= 2) {
    std::fill(distance.begin(), distance.end(), inf);
    return distance;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t m = 0; m < M; ++m) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return front[a][m] < front[b][m]; });
    const double lo = front[order.front()][m];
    const double hi = front[order.back()][m];
    distance[order.front()] = inf;
    distance[order.back()] = inf;
    if (!(hi > lo)) continue;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      distance[order[k]] += (front[order[k + 1]][m] - front[order[k - 1]][m]) / (hi - lo);
    }
  }
  return distance;
}

}  // namespace detail

/// NSGA-II crowding distance within one front. Boundary points per
/// objective are infinite; a zero-range objective contributes nothing.
/// Repeated copies of a point get 0; the first copy is scored as if the
/// repeats were absent.
template <std::size_t M>
std::vector<double> crowding_distance(std::span<const Point<M>> front) {
  std::vector<Point<M>> distinct;
  std::vector<std::size_t> first_copy(front.size(), front.size());
  for (std::size_t i = 0; i < front.size(); ++i) {
    const auto it = std::find(distinct.begin(), distinct.end(), front[i]);
    if (it == distinct.end()) {
      first_copy[i] = distinct.size();
      distinct.push_back(front[i]);
    }
  }
  const auto d = detail::crowding_of_distinct(std::span<const Point<M>>(distinct));
  std::vector<double> out(front.size(), 0.0);
  for (std::size_t i = 0; i < front.size(); ++i) {
    if (first_copy[i] < front.size()) out[i] = d[first_copy[i]];
  }
  return out;
}

template <std::size_t M>
std::vector<double> crowding_distance(const std::vector<Point<M>>& front) {
  return crowding_distance(std::span<const Point<M>>(front));
}

/// Das-Dennis simplex lattice: all M-vectors of multiples of 1/divisions
/// summing to one. Two objectives give divisions + 1 points.
template <std::size_t M>
std::vector<Point<M>> reference_points(int divisions) {
  std::vector<Point<M>> out;
  if (divisions < 1) return out;
  Point<M> current{};
  auto recurse = [&](auto&& self, std::size_t axis, int left) -> void {
    if (axis == M - 1) {
      current[axis] = static_cast<double>(left) / divisions;
      out.push_back(current);
      return;
    }
    for (int i = left; i >= 0; --i) {
      current[axis] = static_cast<double>(i) / divisions;
      self(self, axis + 1, left - i);
    }
  };
  recurse(recurse, 0, divisions);
  return out;
}

/// Pairwise Euclidean distance matrix.
template <std::size_t M>
std::vector<std::vector<double>> distance_matrix(std::span<const Point<M>> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t m = 0; m < M; ++m) s += (points[i][m] - points[j][m]) * (points[i][m] - points[j][m]);
      d[i][j] = d[j][i] = std::sqrt(s);
    }
  }
  return d;
}

/// SPEA2 fitness: raw fitness (sum of the strengths of a point's dominators)
/// plus density 1 / (sigma_k + 2), sigma_k being the distance to the k-th
/// nearest neighbour, k = floor(sqrt(n)). Non-dominated points score < 1.
template <std::size_t M>
std::vector<double> spea2_fitness(std::span<const Point<M>> points) {
  const std::size_t n = points.size();
  std::vector<std::size_t> strength(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && dominates(points[i], points[j])) ++strength[i];
    }
  }
  std::vector<double> fitness(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && dominates(points[j], points[i])) fitness[i] += static_cast<double>(strength[j]);
    }
  }
  const auto k = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
  const auto dist = distance_matrix(points);
  std::vector<double> row;
  for (std::size_t i = 0; i < n; ++i) {
    row.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) row.push_back(dist[i][j]);
    }
    double sigma = 0.0;
    if (!row.empty()) {
      const std::size_t kth = std::min(k, row.size()) - 1;
      std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(kth), row.end());
      sigma = row[kth];
    }
    fitness[i] += 1.0 / (sigma + 2.0);
  }
  return fitness;
}

template <std::size_t M>
std::vector<double> spea2_fitness(const std::vector<Point<M>>& points) {
  return spea2_fitness(std::span<const Point<M>>(points));
}

/// SPEA2 archive truncation: repeatedly drops the member whose sorted list
/// of neighbour distances is lexicographically smallest (nearest neighbour
/// first, ties broken by the next nearest) until `target` remain. Returns
/// the surviving indices into `points`, ascending.
template <std::size_t M>
std::vector<std::size_t> spea2_truncate(std::span<const Point<M>> points, std::size_t target) {
  std::vector<std::size_t> alive(points.size());
  std::iota(alive.begin(), alive.end(), std::size_t{0});
  if (alive.size() <= target) return alive;
  const auto dist = distance_matrix(points);
  std::vector<std::vector<double>> sorted(points.size());
  while (alive.size() > target) {
    for (std::size_t a : alive) {
      auto& row = sorted[a];
      row.clear();
      for (std::size_t b : alive) {
        if (b != a) row.push_back(dist[a][b]);
      }
      std::sort(row.begin(), row.end());
    }
    std::size_t victim = 0;
    for (std::size_t i = 1; i < alive.size(); ++i) {
      if (sorted[alive[i]] < sorted[alive[victim]]) victim = i;
    }
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(victim));
  }
  return alive;
}

}  // namespace uavpath

#endif  // UAVPATH_PARETO_HPP_
