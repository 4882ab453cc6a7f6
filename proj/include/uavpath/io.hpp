#ifndef UAVPATH_IO_HPP_
#define UAVPATH_IO_HPP_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "uavpath/environment.hpp"
#include "uavpath/errors.hpp"
#include "uavpath/evolution.hpp"
#include "uavpath/operators.hpp"
#include "uavpath/physics.hpp"

namespace uavpath {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

inline double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  return j.get<double>();
}

inline int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  return j.get<int>();
}

inline CellCoord coord_of(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw ParseError(path, "expected [row, col]");
  return {integer(j[0], path + "[0]"), integer(j[1], path + "[1]")};
}

template <typename T>
void read_optional(const Json& j, const std::string& key, T& out, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(path.empty() ? key : path + "." + key, "wrong type");
  }
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("$", e.what());
  }
}

}  // namespace detail

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

// ---- instances ------------------------------------------------------------

inline Json instance_to_json(const Environment& env) {
  const GridSpec& s = env.spec();
  Json j;
  j["grid"] = {{"rows", s.rows}, {"cols", s.cols}, {"cell_size_m", s.cell_size}};
  j["levels_m"] = s.levels;
  j["start"] = {{"cell", {s.start.row, s.start.col}}, {"level", s.start_level}};
  j["goal"] = {{"cell", {s.goal.row, s.goal.col}}};
  j["default_risk"] = 0.0;
  Json cells = Json::array();
  for (CellId c = 0; c < env.cell_count(); ++c) {
    const CellData& d = env.cell(c);
    const CellCoord rc = env.coord(c);
    cells.push_back({{"cell", {rc.row, rc.col}},
                     {"obstacle_m", d.obstacle_height},
                     {"ceiling_m", d.max_altitude},
                     {"risk", d.risk}});
  }
  j["cells"] = std::move(cells);
  return j;
}

/// Builds an environment from the instance schema. Every failure is a
/// ParseError naming the offending field.
inline Environment instance_from_json(const Json& j) {
  using detail::require;
  GridSpec s;
  const Json& grid = require(j, "grid", "");
  s.rows = detail::integer(require(grid, "rows", "grid"), "grid.rows");
  s.cols = detail::integer(require(grid, "cols", "grid"), "grid.cols");
  s.cell_size = detail::number(require(grid, "cell_size_m", "grid"), "grid.cell_size_m");
  if (s.rows < 1 || s.cols < 1) throw ParseError("grid", "rows and cols must be positive");
  if (!(s.cell_size > 0.0)) throw ParseError("grid.cell_size_m", "must be positive");
  const Json& levels = require(j, "levels_m", "");
  if (!levels.is_array() || levels.empty()) throw ParseError("levels_m", "expected a non-empty array");
  for (std::size_t k = 0; k < levels.size(); ++k) s.levels.push_back(detail::number(levels[k], "levels_m[" + std::to_string(k) + "]"));
  for (std::size_t k = 1; k < s.levels.size(); ++k) {
    if (!(s.levels[k] > s.levels[k - 1])) throw ParseError("levels_m", "altitudes must be strictly increasing");
  }
  const Json& start = require(j, "start", "");
  s.start = detail::coord_of(require(start, "cell", "start"), "start.cell");
  s.start_level = detail::integer(require(start, "level", "start"), "start.level");
  s.goal = detail::coord_of(require(require(j, "goal", ""), "cell", "goal"), "goal.cell");
  if (s.goal.col < s.start.col) {
    throw ParseError("goal.cell", "orientation: goal column " + std::to_string(s.goal.col) + " lies west of start column " +
                                      std::to_string(s.start.col));
  }
  if (s.start_level < 0 || s.start_level >= static_cast<int>(s.levels.size())) {
    throw ParseError("start.level", "not a valid level index");
  }
  for (const auto& [name, c] : {std::pair{"start.cell", s.start}, std::pair{"goal.cell", s.goal}}) {
    if (c.row < 0 || c.row >= s.rows || c.col < 0 || c.col >= s.cols) throw ParseError(name, "outside the grid");
  }

  double default_risk = 0.0;
  if (j.contains("default_risk")) default_risk = detail::number(j["default_risk"], "default_risk");
  const std::size_t count = static_cast<std::size_t>(s.rows) * static_cast<std::size_t>(s.cols);
  std::vector<CellData> cells(count, CellData{0.0, s.levels.back(), std::vector<double>(s.levels.size(), default_risk)});
  std::vector<char> seen(count, 0);
  if (j.contains("cells")) {
    const Json& list = j["cells"];
    if (!list.is_array()) throw ParseError("cells", "expected an array");
    for (std::size_t n = 0; n < list.size(); ++n) {
      const std::string path = "cells[" + std::to_string(n) + "]";
      const CellCoord rc = detail::coord_of(require(list[n], "cell", path), path + ".cell");
      const std::string where = "[" + std::to_string(rc.row) + "," + std::to_string(rc.col) + "]";
      if (rc.row < 0 || rc.row >= s.rows || rc.col < 0 || rc.col >= s.cols) {
        throw ParseError(path + ".cell", "cell " + where + " lies outside the grid");
      }
      const std::size_t id = static_cast<std::size_t>(rc.row * s.cols + rc.col);
      if (seen[id]) throw ParseError(path + ".cell", "cell " + where + " listed twice");
      seen[id] = 1;
      CellData& d = cells[id];
      if (list[n].contains("obstacle_m")) d.obstacle_height = detail::number(list[n]["obstacle_m"], path + ".obstacle_m");
      if (list[n].contains("ceiling_m")) d.max_altitude = detail::number(list[n]["ceiling_m"], path + ".ceiling_m");
      if (list[n].contains("risk")) {
        const Json& risk = list[n]["risk"];
        if (!risk.is_array()) throw ParseError(path + ".risk", "expected an array");
        if (risk.size() != s.levels.size()) {
          throw ParseError(path + ".risk", "cell " + where + " has " + std::to_string(risk.size()) + " risk values, expected " +
                                               std::to_string(s.levels.size()));
        }
        for (std::size_t k = 0; k < risk.size(); ++k) {
          d.risk[k] = detail::number(risk[k], path + ".risk[" + std::to_string(k) + "]");
          if (!(d.risk[k] >= 0.0 && d.risk[k] <= 1.0)) {
            throw ParseError(path + ".risk[" + std::to_string(k) + "]", "cell " + where + " risk outside [0, 1]");
          }
        }
      }
      if (d.obstacle_height < 0.0) throw ParseError(path + ".obstacle_m", "cell " + where + " has a negative obstacle");
    }
  }
  try {
    return Environment(std::move(s), std::move(cells));
  } catch (const std::invalid_argument& e) {
    throw ParseError("instance", e.what());
  }
}

inline Environment load_instance(const std::filesystem::path& path) {
  return instance_from_json(detail::parse_text(detail::read_text(path)));
}

inline void save_instance(const Environment& env, const std::filesystem::path& path) {
  write_text(path, instance_to_json(env).dump(1) + "\n");
}

// ---- parameter blocks -----------------------------------------------------

inline Json to_json(const DroneParams& p) {
  return {{"weight_kg", p.weight_kg},         {"gravity", p.gravity},     {"blade_disc_area_m2", p.blade_disc_area_m2},
          {"rotor_count", p.rotor_count},     {"speed_mps", p.speed_mps}, {"sea_level_density", p.sea_level_density}};
}

inline DroneParams drone_from_json(const Json& j, const std::string& path = "drone") {
  DroneParams p;
  detail::read_optional(j, "weight_kg", p.weight_kg, path);
  detail::read_optional(j, "gravity", p.gravity, path);
  detail::read_optional(j, "blade_disc_area_m2", p.blade_disc_area_m2, path);
  detail::read_optional(j, "rotor_count", p.rotor_count, path);
  detail::read_optional(j, "speed_mps", p.speed_mps, path);
  detail::read_optional(j, "sea_level_density", p.sea_level_density, path);
  try {
    p.validate();
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
  return p;
}

inline Json to_json(const OperatorConfig& c) {
  return {{"crossover_probability", c.crossover_probability},
          {"mutation_probability", c.mutation_probability},
          {"mutation_rate", c.mutation_rate},
          {"max_init_retries", c.max_init_retries},
          {"max_shift", c.max_shift},
          {"weight_sigma", c.weight_sigma}};
}

inline OperatorConfig operators_from_json(const Json& j, OperatorConfig c = {}, const std::string& path = "operators") {
  detail::read_optional(j, "crossover_probability", c.crossover_probability, path);
  detail::read_optional(j, "mutation_probability", c.mutation_probability, path);
  detail::read_optional(j, "mutation_rate", c.mutation_rate, path);
  detail::read_optional(j, "max_init_retries", c.max_init_retries, path);
  detail::read_optional(j, "max_shift", c.max_shift, path);
  detail::read_optional(j, "weight_sigma", c.weight_sigma, path);
  try {
    c.validate();
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
  return c;
}

inline Json to_json(const AlgoConfig& c) {
  return {{"algorithm", std::string(to_string(c.algorithm))},
          {"population_size", c.population_size},
          {"archive_size", c.archive_size},
          {"evaluation_budget", c.evaluation_budget},
          {"reference_divisions", c.reference_divisions},
          {"seed", c.seed},
          {"operators", to_json(c.operators)}};
}

inline Json to_json(const GeneratorSettings& s) {
  Json j = {{"rows", s.rows},
            {"cols", s.cols},
            {"cell_size_m", s.cell_size},
            {"level_count", s.level_count},
            {"base_altitude_m", s.base_altitude},
            {"level_spacing_m", s.level_spacing},
            {"obstacle_density", s.obstacle_density},
            {"max_obstacle_level", s.max_obstacle_level},
            {"ceiling", s.ceiling == CeilingPolicy::random_caps ? "random_caps" : "unrestricted"},
            {"ceiling_fraction", s.ceiling_fraction},
            {"min_ceiling_level", s.min_ceiling_level},
            {"risk_min", s.risk_min},
            {"risk_max", s.risk_max},
            {"start_level", s.start_level},
            {"max_attempts", s.max_attempts}};
  if (s.start) j["start"] = {s.start->row, s.start->col};
  if (s.goal) j["goal"] = {s.goal->row, s.goal->col};
  return j;
}

inline GeneratorSettings generator_from_json(const Json& j, GeneratorSettings s = {}, const std::string& path = "generator") {
  detail::read_optional(j, "rows", s.rows, path);
  detail::read_optional(j, "cols", s.cols, path);
  detail::read_optional(j, "cell_size_m", s.cell_size, path);
  detail::read_optional(j, "level_count", s.level_count, path);
  detail::read_optional(j, "base_altitude_m", s.base_altitude, path);
  detail::read_optional(j, "level_spacing_m", s.level_spacing, path);
  detail::read_optional(j, "obstacle_density", s.obstacle_density, path);
  detail::read_optional(j, "max_obstacle_level", s.max_obstacle_level, path);
  detail::read_optional(j, "ceiling_fraction", s.ceiling_fraction, path);
  detail::read_optional(j, "min_ceiling_level", s.min_ceiling_level, path);
  detail::read_optional(j, "risk_min", s.risk_min, path);
  detail::read_optional(j, "risk_max", s.risk_max, path);
  detail::read_optional(j, "start_level", s.start_level, path);
  detail::read_optional(j, "max_attempts", s.max_attempts, path);
  if (j.contains("ceiling")) {
    const std::string c = j["ceiling"].is_string() ? j["ceiling"].get<std::string>() : "";
    if (c == "random_caps") {
      s.ceiling = CeilingPolicy::random_caps;
    } else if (c == "unrestricted") {
      s.ceiling = CeilingPolicy::unrestricted;
    } else {
      throw ParseError(path + ".ceiling", "expected \"unrestricted\" or \"random_caps\"");
    }
  }
  if (j.contains("start")) s.start = detail::coord_of(j["start"], path + ".start");
  if (j.contains("goal")) s.goal = detail::coord_of(j["goal"], path + ".goal");
  return s;
}

}  // namespace uavpath

#endif  // UAVPATH_IO_HPP_
