#ifndef UAVPATH_REPORT_HPP_
#define UAVPATH_REPORT_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "uavpath/evolution.hpp"
#include "uavpath/exact.hpp"
#include "uavpath/io.hpp"

namespace uavpath {

inline Json objectives_json(const ObjectiveVector& z) {
  return {{"length_m", z.length}, {"energy_j", z.energy}, {"risk", z.risk}};
}

inline ObjectiveVector objectives_from_json(const Json& j, const std::string& path) {
  using detail::number;
  using detail::require;
  return {number(require(j, "length_m", path), path + ".length_m"), number(require(j, "energy_j", path), path + ".energy_j"),
          number(require(j, "risk", path), path + ".risk")};
}

/// Path export: one record per visited cell with its entry altitude.
inline Json path_json(const Chromosome& ch, const Environment& env) {
  Json path = Json::array();
  for (std::size_t t = 0; t < ch.cells.size(); ++t) {
    const CellCoord rc = env.coord(ch.cells[t]);
    path.push_back({{"cell", {rc.row, rc.col}}, {"entry_altitude_m", env.altitude(ch.entry_levels[t])}});
  }
  return path;
}

inline Json exact_front_json(const ExactFront& f, const Environment& env) {
  Json members = Json::array();
  for (const ExactMember& m : f.members) members.push_back({{"objectives", objectives_json(m.objectives)}, {"path", path_json(m.chromosome, env)}});
  return {{"paths", f.paths}, {"members", std::move(members)}};
}

struct RunLabel {
  std::string instance;
  bool tuned = false;
  std::uint64_t seed = 0;  ///< seed as listed in the run configuration
};

/// Run report: configuration echo, HV trace, final front with decoded paths
/// and the objective vectors of the run's elite archive. Timing is left out
/// so repeated runs produce identical files.
inline Json run_report(const RunResult& r, const AlgoConfig& cfg, const DroneParams& params, const Environment& env,
                       const RunLabel& label) {
  Json j;
  j["instance"] = label.instance;
  j["algorithm"] = std::string(to_string(r.algorithm));
  j["tuned"] = label.tuned;
  j["seed"] = label.seed;
  j["config"] = to_json(cfg);
  j["drone"] = to_json(params);
  j["evaluations"] = r.evaluations;
  j["generations"] = r.generations;
  j["bounds"] = {{"length_lo", r.bounds.length_lo},
                 {"length_hi", r.bounds.length_hi},
                 {"energy_lo", r.bounds.energy_lo},
                 {"energy_hi", r.bounds.energy_hi}};
  j["trace_reference"] = {r.trace_reference[0], r.trace_reference[1]};
  Json trace = Json::array();
  for (const HvSample& s : r.trace) trace.push_back({{"generation", s.generation}, {"evaluations", s.evaluations}, {"hv", s.hv}});
  j["trace"] = std::move(trace);
  Json front = Json::array();
  for (const FrontMember& m : r.front) {
    front.push_back({{"objectives", objectives_json(m.objectives)},
                     {"combined", m.point.combined},
                     {"weight", m.chromosome.weight},
                     {"path", path_json(m.chromosome, env)}});
  }
  j["front"] = std::move(front);
  Json archive = Json::array();
  for (const ArchiveEntry& e : r.archive) {
    Json o = objectives_json(e.objectives);
    o["evaluation"] = e.evaluation;
    archive.push_back(std::move(o));
  }
  j["archive"] = std::move(archive);
  j["stats"] = {{"init_restarts", r.stats.init_restarts}, {"crossovers", r.stats.crossovers},
                {"splice_failures", r.stats.splice_failures}, {"loop_trims", r.stats.loop_trims},
                {"level_repairs", r.stats.level_repairs},   {"mutations", r.stats.mutations}};
  return j;
}

/// The parts of a run report the table and plot commands need.
struct ReportSummary {
  std::string instance;
  std::string algorithm;
  bool tuned = false;
  std::uint64_t seed = 0;
  std::vector<ObjectiveVector> front;
  /// Decoded path of each front member: (row, col, entry altitude).
  std::vector<std::vector<std::array<double, 3>>> paths;
  std::vector<ObjectiveVector> archive;
  std::vector<HvSample> trace;
};

inline ReportSummary summary_from_json(const Json& j) {
  using detail::require;
  ReportSummary s;
  try {
    s.instance = require(j, "instance", "").get<std::string>();
    s.algorithm = require(j, "algorithm", "").get<std::string>();
    s.tuned = require(j, "tuned", "").get<bool>();
    s.seed = require(j, "seed", "").get<std::uint64_t>();
  } catch (const nlohmann::json::type_error& e) {
    throw ParseError("report", e.what());
  }
  const Json& front = require(j, "front", "");
  for (std::size_t i = 0; i < front.size(); ++i) {
    const std::string p = "front[" + std::to_string(i) + "]";
    s.front.push_back(objectives_from_json(require(front[i], "objectives", p), p + ".objectives"));
    std::vector<std::array<double, 3>> steps;
    if (front[i].contains("path")) {
      for (const Json& step : front[i]["path"]) {
        steps.push_back({step.at("cell")[0].get<double>(), step.at("cell")[1].get<double>(), step.at("entry_altitude_m").get<double>()});
      }
    }
    s.paths.push_back(std::move(steps));
  }
  const Json& archive = require(j, "archive", "");
  for (std::size_t i = 0; i < archive.size(); ++i) s.archive.push_back(objectives_from_json(archive[i], "archive[" + std::to_string(i) + "]"));
  for (const Json& t : require(j, "trace", "")) {
    s.trace.push_back({t.at("generation").get<int>(), t.at("evaluations").get<std::int64_t>(), t.at("hv").get<double>()});
  }
  return s;
}

inline ReportSummary load_report(const std::filesystem::path& path) {
  return summary_from_json(detail::parse_text(detail::read_text(path)));
}

}  // namespace uavpath

#endif  // UAVPATH_REPORT_HPP_
