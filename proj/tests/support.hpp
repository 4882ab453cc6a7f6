#ifndef UAVPATH_TESTS_SUPPORT_HPP_
#define UAVPATH_TESTS_SUPPORT_HPP_

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "uavpath/uavpath.hpp"

namespace testing_support {

using namespace uavpath;

/// Mutable instance description; build() runs the constructor checks.
struct Builder {
  GridSpec spec;
  std::vector<CellData> cells;

  Builder(int rows, int cols, std::vector<double> levels, CellCoord start, CellCoord goal, double cell_size = 10.0) {
    spec.rows = rows;
    spec.cols = cols;
    spec.cell_size = cell_size;
    spec.levels = std::move(levels);
    spec.start = start;
    spec.goal = goal;
    cells.assign(static_cast<std::size_t>(rows * cols),
                 CellData{0.0, spec.levels.back(), std::vector<double>(spec.levels.size(), 0.0)});
  }

  CellData& at(int r, int c) { return cells[static_cast<std::size_t>(r * spec.cols + c)]; }

  Environment build() const { return Environment(spec, cells); }
};

inline std::vector<double> levels(int count, double base = 10.0, double spacing = 10.0) {
  std::vector<double> h;
  for (int k = 0; k < count; ++k) h.push_back(base + spacing * k);
  return h;
}

inline Environment flat_grid(int rows, int cols, int level_count = 1) {
  return Builder(rows, cols, levels(level_count), {0, 0}, {rows - 1, cols - 1}).build();
}

inline Environment random_instance(int size, int level_count, double density, std::uint64_t seed) {
  GeneratorSettings g;
  g.rows = size;
  g.cols = size;
  g.level_count = level_count;
  g.obstacle_density = density;
  return generate(g, seed);
}

/// Instance with obstacles that need climbing and random ceilings.
inline Environment capped_instance(int size, int level_count, std::uint64_t seed) {
  GeneratorSettings g;
  g.rows = size;
  g.cols = size;
  g.level_count = level_count;
  g.obstacle_density = 0.3;
  g.ceiling = CeilingPolicy::random_caps;
  g.ceiling_fraction = 0.3;
  return generate(g, seed);
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("uavpath_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace testing_support

#endif  // UAVPATH_TESTS_SUPPORT_HPP_
