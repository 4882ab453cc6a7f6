#ifndef UAVPATH_COMMANDS_HPP_
#define UAVPATH_COMMANDS_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "uavpath/check.hpp"
#include "uavpath/evolution.hpp"
#include "uavpath/io.hpp"
#include "uavpath/metrics.hpp"
#include "uavpath/milp.hpp"
#include "uavpath/report.hpp"
#include "uavpath/svg.hpp"
#include "uavpath/tuner.hpp"

namespace uavpath::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kUsage = 1, kRunFailure = 2, kCheckFailure = 3 };

struct SuiteSettings {
  std::vector<int> sizes = {10, 15, 20, 25, 30};
  int variants = 4;
  double density = 0.15;
  double density_step = 0.05;  ///< added per variant
  GeneratorSettings base;
};

struct RunConfig {
  std::vector<fs::path> instances;
  DroneParams drone;
  std::vector<Algorithm> algorithms = {Algorithm::spea2, Algorithm::nsga2, Algorithm::nsga3};
  std::vector<bool> tuned = {false};
  std::vector<std::uint64_t> seeds = {1};
  AlgoConfig algo;  ///< template; algorithm and seed are set per run
  TunerConfig tuner;
  int workers = 1;
  fs::path out = "out";
  SuiteSettings suite;
  std::uint64_t suite_seed = 1;
};

/// Command-line values that take precedence over the config file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<fs::path> out;
  std::optional<int> workers;
  std::optional<std::string> algo;
  std::optional<bool> tuned;
  std::vector<fs::path> instances;
};

inline std::vector<fs::path> json_files_in(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

inline RunConfig config_from_json(const Json& j, const fs::path& base_dir = ".") {
  RunConfig c;
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base_dir / p; };
  if (j.contains("instances")) {
    for (const auto& p : j["instances"]) c.instances.push_back(resolve(p.get<std::string>()));
  }
  if (j.contains("instance_dir")) {
    const fs::path dir = resolve(j["instance_dir"].get<std::string>());
    if (fs::is_directory(dir)) {
      for (const auto& f : json_files_in(dir)) c.instances.push_back(f);
    }
  }
  if (j.contains("drone")) c.drone = drone_from_json(j["drone"]);
  if (j.contains("algorithms")) {
    c.algorithms.clear();
    for (const auto& a : j["algorithms"]) {
      try {
        c.algorithms.push_back(parse_algorithm(a.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw ParseError("algorithms", e.what());
      }
    }
  }
  if (j.contains("tuned")) {
    c.tuned.clear();
    for (const auto& t : j["tuned"]) c.tuned.push_back(t.get<bool>());
  }
  if (j.contains("seeds")) c.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
  uavpath::detail::read_optional(j, "population_size", c.algo.population_size, "");
  uavpath::detail::read_optional(j, "archive_size", c.algo.archive_size, "");
  uavpath::detail::read_optional(j, "evaluation_budget", c.algo.evaluation_budget, "");
  uavpath::detail::read_optional(j, "reference_divisions", c.algo.reference_divisions, "");
  if (j.contains("operators")) c.algo.operators = operators_from_json(j["operators"]);
  if (j.contains("tuner")) {
    uavpath::detail::read_optional(j["tuner"], "configurations", c.tuner.configurations, "tuner");
    uavpath::detail::read_optional(j["tuner"], "evaluation_budget", c.tuner.evaluation_budget, "tuner");
  }
  uavpath::detail::read_optional(j, "workers", c.workers, "");
  if (j.contains("out")) c.out = resolve(j["out"].get<std::string>());
  if (j.contains("suite")) {
    const Json& s = j["suite"];
    uavpath::detail::read_optional(s, "sizes", c.suite.sizes, "suite");
    uavpath::detail::read_optional(s, "variants", c.suite.variants, "suite");
    uavpath::detail::read_optional(s, "density", c.suite.density, "suite");
    uavpath::detail::read_optional(s, "density_step", c.suite.density_step, "suite");
    uavpath::detail::read_optional(s, "seed", c.suite_seed, "suite");
    if (s.contains("generator")) c.suite.base = generator_from_json(s["generator"]);
  }
  if (c.algorithms.empty()) throw ParseError("algorithms", "at least one algorithm is required");
  if (c.seeds.empty()) throw ParseError("seeds", "at least one seed is required");
  if (c.tuned.empty()) throw ParseError("tuned", "at least one tuning flag is required");
  if (c.workers < 1) throw ParseError("workers", "must be positive");
  return c;
}

inline RunConfig load_config(const fs::path& path) {
  return config_from_json(uavpath::detail::parse_text(uavpath::detail::read_text(path)), path.parent_path());
}

inline void apply(RunConfig& c, const Overrides& o) {
  if (o.seed) {
    c.seeds = {*o.seed};
    c.suite_seed = *o.seed;
  }
  if (o.out) c.out = *o.out;
  if (o.workers) c.workers = std::max(1, *o.workers);
  if (o.algo) c.algorithms = {parse_algorithm(*o.algo)};
  if (o.tuned) c.tuned = {*o.tuned};
  if (!o.instances.empty()) {
    c.instances.clear();
    for (const auto& p : o.instances) {
      if (fs::is_directory(p)) {
        for (const auto& f : json_files_in(p)) c.instances.push_back(f);
      } else {
        c.instances.push_back(p);
      }
    }
  }
}

// ---- gen ------------------------------------------------------------------

inline std::string suite_name(int size_index, int variant) {
  return "T" + std::to_string(size_index) + "-" + std::to_string(variant);
}

/// Writes the size-by-variant suite as T{size}-{variant}.json. Variants of
/// one size differ in obstacle density and in the random start and goal.
inline int cmd_gen(const RunConfig& cfg, std::ostream& log) {
  const SuiteSettings& s = cfg.suite;
  for (std::size_t si = 0; si < s.sizes.size(); ++si) {
    for (int v = 1; v <= s.variants; ++v) {
      const std::string name = suite_name(static_cast<int>(si) + 1, v);
      GeneratorSettings g = s.base;
      g.rows = s.sizes[si];
      g.cols = s.sizes[si];
      g.obstacle_density = std::clamp(s.density + s.density_step * (v - 1), 0.0, 0.95);
      const Environment env = generate(g, splitmix64(cfg.suite_seed ^ hash_name(name)));
      save_instance(env, cfg.out / (name + ".json"));
      log << "wrote " << (cfg.out / (name + ".json")).string() << "\n";
    }
  }
  return kOk;
}

// ---- table ----------------------------------------------------------------

struct TableOutput {
  std::vector<TableRow> rows;
  std::string csv;
  std::string text;
  std::string hv_csv;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

inline std::string pretty(const std::string& algo) {
  if (algo == "spea2") return "SPEA-II";
  if (algo == "nsga2") return "NSGA-II";
  if (algo == "nsga3") return "NSGA-III";
  return algo;
}

struct InstanceMapping {
  NormBounds bounds;
  Point2 reference{};
};

/// Bounds from the union of every run's archive on the instance, and the
/// shared reference of all mapped archive points.
inline std::map<std::string, InstanceMapping> instance_mappings(const std::vector<ReportSummary>& reports) {
  std::map<std::string, InstanceMapping> out;
  for (const auto& r : reports) {
    auto [it, inserted] = out.try_emplace(r.instance, InstanceMapping{uavpath::detail::empty_bounds(), {}});
    for (const auto& z : r.archive) it->second.bounds.include(z);
    for (const auto& z : r.front) it->second.bounds.include(z);
  }
  for (auto& [name, m] : out) {
    std::vector<Point2> pts;
    for (const auto& r : reports) {
      if (r.instance != name) continue;
      for (const auto& z : r.archive) pts.push_back(metric_point(z, m.bounds));
      for (const auto& z : r.front) pts.push_back(metric_point(z, m.bounds));
    }
    if (!pts.empty()) m.reference = shared_reference(pts);
  }
  return out;
}

}  // namespace detail

/// Relative-HV table. Column groups are tuned then untuned, each in the
/// order SPEA-II, NSGA-II, NSGA-III; a cell's HV is the mean over seeds.
inline TableOutput build_table(const std::vector<ReportSummary>& reports) {
  TableOutput out;
  const auto maps = detail::instance_mappings(reports);
  std::vector<std::string> instances;
  std::set<bool> flags;
  for (const auto& r : reports) {
    if (std::find(instances.begin(), instances.end(), r.instance) == instances.end()) instances.push_back(r.instance);
    flags.insert(r.tuned);
  }
  std::vector<std::pair<bool, std::string>> columns;
  for (bool t : {true, false}) {
    if (!flags.contains(t)) continue;
    for (const char* a : {"spea2", "nsga2", "nsga3"}) {
      const bool present = std::any_of(reports.begin(), reports.end(), [&](const ReportSummary& r) { return r.tuned == t && r.algorithm == a; });
      if (present) columns.emplace_back(t, a);
    }
  }

  out.hv_csv = "instance,algorithm,tuned,seed,hv,front_size\n";
  std::vector<FrontSummary> summaries;
  for (const auto& inst : instances) {
    const auto& m = maps.at(inst);
    for (const auto& [t, a] : columns) {
      double sum = 0.0;
      int count = 0;
      std::size_t size = 0;
      for (const auto& r : reports) {
        if (r.instance != inst || r.tuned != t || r.algorithm != a) continue;
        std::vector<Point2> pts;
        for (const auto& z : r.archive) pts.push_back(metric_point(z, m.bounds));
        const double hv = hypervolume_2d(pts, m.reference);
        out.hv_csv += inst + "," + a + "," + (t ? "1" : "0") + "," + std::to_string(r.seed) + "," + detail::fmt(hv) + "," +
                      std::to_string(r.front.size()) + "\n";
        sum += hv;
        size += r.front.size();
        ++count;
      }
      if (count == 0) {
        out.warnings.push_back("missing runs for " + inst + " / " + a + (t ? " (tuned)" : " (untuned)"));
        continue;
      }
      summaries.push_back({inst, a, t, sum / count, 0.0, size / static_cast<std::size_t>(count)});
    }
  }
  out.rows = relative_hv_table(summaries);

  std::string header = "instance";
  for (const auto& [t, a] : columns) header += std::string(",") + (t ? "tuned_" : "untuned_") + a;
  out.csv = header + "\n";
  std::string group_line = std::string(10, ' ');
  std::string name_line = "Dataset   ";
  std::size_t tuned_cols = 0;
  for (const auto& c : columns) tuned_cols += c.first ? 1 : 0;
  if (tuned_cols > 0) {
    std::string g = "Algorithms + tuning";
    g.resize(std::max<std::size_t>(g.size() + 1, tuned_cols * 11), ' ');
    group_line += g;
  }
  if (columns.size() > tuned_cols) group_line += "Algorithms";
  for (const auto& [t, a] : columns) {
    std::string n = detail::pretty(a);
    n.resize(11, ' ');
    name_line += n;
  }
  while (!name_line.empty() && name_line.back() == ' ') name_line.pop_back();
  out.text = group_line + "\n" + name_line + "\n";
  for (const TableRow& row : out.rows) {
    std::string csv_line = row.instance;
    std::string text_line = row.instance;
    text_line.resize(10, ' ');
    for (const auto& [t, a] : columns) {
      std::string cell;
      for (const auto& e : row.entries) {
        if (e.tuned == t && e.algorithm == a) cell = percent_cell(row, e);
      }
      csv_line += "," + cell;
      cell.resize(11, ' ');
      text_line += cell;
    }
    while (!text_line.empty() && text_line.back() == ' ') text_line.pop_back();
    out.csv += csv_line + "\n";
    out.text += text_line + "\n";
    if (row.degenerate) out.warnings.push_back("instance " + row.instance + " has zero best HV");
  }
  return out;
}

/// Report files named directly, found in directories, or listed by a
/// manifest.json.
inline std::vector<fs::path> collect_reports(const std::vector<fs::path>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      const fs::path runs = fs::is_directory(in / "runs") ? in / "runs" : in;
      for (const auto& f : json_files_in(runs)) {
        if (f.filename() != "manifest.json") files.push_back(f);
      }
    } else if (in.filename() == "manifest.json") {
      const Json m = uavpath::detail::parse_text(uavpath::detail::read_text(in));
      for (const auto& e : m.at("runs")) {
        if (e.at("status").get<std::string>() == "ok") files.push_back(in.parent_path() / e.at("report").get<std::string>());
      }
    } else {
      files.push_back(in);
    }
  }
  return files;
}

inline void write_table(const TableOutput& t, const fs::path& out) {
  write_text(out / "table.csv", t.csv);
  write_text(out / "table.txt", t.text);
  write_text(out / "hv.csv", t.hv_csv);
}

inline int cmd_table(const std::vector<fs::path>& inputs, const fs::path& out, std::ostream& log) {
  std::vector<ReportSummary> reports;
  for (const auto& f : collect_reports(inputs)) reports.push_back(load_report(f));
  if (reports.empty()) {
    log << "table: no reports found\n";
    return kUsage;
  }
  const TableOutput t = build_table(reports);
  for (const auto& w : t.warnings) log << "warning: " << w << "\n";
  write_table(t, out);
  log << t.text;
  return kOk;
}

// ---- solve ----------------------------------------------------------------

struct Job {
  fs::path instance;
  std::string name;
  Algorithm algorithm;
  bool tuned;
  std::uint64_t seed;
};

inline std::string run_file(const Job& j) {
  return j.name + "__" + std::string(to_string(j.algorithm)) + "__" + (j.tuned ? "tuned" : "untuned") + "__s" +
         std::to_string(j.seed) + ".json";
}

inline std::uint64_t run_seed(const Job& j) {
  return splitmix64(j.seed ^ hash_name(j.name + "/" + std::string(to_string(j.algorithm)) + (j.tuned ? "/tuned" : "/untuned")));
}

/// Runs every instance x algorithm x tuning flag x seed combination on
/// `workers` threads, then writes the manifest and the relative-HV table.
/// Output files depend only on the configuration.
inline int cmd_solve(const RunConfig& cfg, std::ostream& log) {
  if (cfg.instances.empty()) {
    log << "solve: no instances configured\n";
    return kUsage;
  }
  std::vector<Job> jobs;
  for (const auto& inst : cfg.instances) {
    for (Algorithm a : cfg.algorithms) {
      for (bool t : cfg.tuned) {
        for (std::uint64_t s : cfg.seeds) jobs.push_back({inst, inst.stem().string(), a, t, s});
      }
    }
  }
  struct Outcome {
    bool ok = false;
    std::string error;
    std::optional<ReportSummary> summary;
  };
  std::vector<Outcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      try {
        const Environment env = load_instance(job.instance);
        AlgoConfig algo = cfg.algo;
        algo.algorithm = job.algorithm;
        algo.seed = run_seed(job);
        if (job.tuned) algo = tune(env, cfg.drone, algo, cfg.tuner).best;
        const RunResult r = run(env, cfg.drone, algo);
        const Json report = run_report(r, algo, cfg.drone, env, {job.name, job.tuned, job.seed});
        write_text(cfg.out / "runs" / run_file(job), report.dump(1) + "\n");
        std::string trace = "generation,evaluations,hv\n";
        for (const auto& s : r.trace) trace += std::to_string(s.generation) + "," + std::to_string(s.evaluations) + "," + detail::fmt(s.hv) + "\n";
        write_text(cfg.out / "traces" / (fs::path(run_file(job)).stem().string() + ".csv"), trace);
        outcomes[i] = {true, {}, summary_from_json(report)};
        std::lock_guard lock(log_mutex);
        log << "done " << run_file(job) << " (" << r.front.size() << " front members, " << r.wall_seconds << " s)\n";
      } catch (const std::exception& e) {
        outcomes[i] = {false, e.what(), std::nullopt};
        std::lock_guard lock(log_mutex);
        log << "failed " << run_file(job) << ": " << e.what() << "\n";
      }
    }
  };
  std::vector<std::thread> pool;
  const int workers = std::min<int>(cfg.workers, static_cast<int>(jobs.size()));
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Json manifest;
  manifest["config"] = {{"algorithm_template", to_json(cfg.algo)},
                        {"drone", to_json(cfg.drone)},
                        {"tuner", {{"configurations", cfg.tuner.configurations}, {"evaluation_budget", cfg.tuner.evaluation_budget}}},
                        {"seeds", cfg.seeds}};
  Json runs = Json::array();
  std::vector<ReportSummary> summaries;
  bool any_failed = false;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& job = jobs[i];
    Json e = {{"instance", job.name},
              {"algorithm", std::string(to_string(job.algorithm))},
              {"tuned", job.tuned},
              {"seed", job.seed},
              {"run_seed", run_seed(job)},
              {"status", outcomes[i].ok ? "ok" : "failed"}};
    if (outcomes[i].ok) {
      e["report"] = "runs/" + run_file(job);
      summaries.push_back(*outcomes[i].summary);
    } else {
      e["error"] = outcomes[i].error;
      any_failed = true;
    }
    runs.push_back(std::move(e));
  }
  manifest["runs"] = std::move(runs);
  write_text(cfg.out / "manifest.json", manifest.dump(1) + "\n");
  if (!summaries.empty()) {
    const TableOutput t = build_table(summaries);
    write_table(t, cfg.out);
    for (const auto& w : t.warnings) log << "warning: " << w << "\n";
  }
  return any_failed ? kRunFailure : kOk;
}

// ---- tune -----------------------------------------------------------------

inline int cmd_tune(const RunConfig& cfg, std::ostream& log) {
  if (cfg.instances.empty()) {
    log << "tune: no instances configured\n";
    return kUsage;
  }
  for (const auto& inst : cfg.instances) {
    const Environment env = load_instance(inst);
    for (Algorithm a : cfg.algorithms) {
      AlgoConfig base = cfg.algo;
      base.algorithm = a;
      base.seed = run_seed({inst, inst.stem().string(), a, true, cfg.seeds.front()});
      const TunerResult r = tune(env, cfg.drone, base, cfg.tuner);
      Json j;
      j["instance"] = inst.stem().string();
      j["best"] = to_json(r.best);
      Json cands = Json::array();
      for (const auto& c : r.candidates) cands.push_back({{"config", to_json(c.config)}, {"hv", c.hv}});
      j["candidates"] = std::move(cands);
      const fs::path file = cfg.out / ("tuned_" + inst.stem().string() + "_" + std::string(to_string(a)) + ".json");
      write_text(file, j.dump(1) + "\n");
      log << "wrote " << file.string() << "\n";
    }
  }
  return kOk;
}

// ---- plot -----------------------------------------------------------------

struct PlotOptions {
  std::optional<fs::path> instance;  ///< sample correlation data on this instance
  int samples = 1000;
  std::uint64_t seed = 1;
  DroneParams drone;
};

/// Z1/Z2 of `samples` random feasible chromosomes and their Pearson r
/// (nullopt when a variance is zero).
struct CorrelationData {
  std::vector<double> length;
  std::vector<double> energy;
  std::optional<double> r;
};

inline CorrelationData correlation_sample(const Environment& env, const DroneParams& params, int samples, std::uint64_t seed) {
  CorrelationData d;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const ObjectiveVector z = evaluate(initialize(env, rng), env, params);
    d.length.push_back(z.length);
    d.energy.push_back(z.energy);
  }
  try {
    d.r = pearson(d.length, d.energy);
  } catch (const std::domain_error&) {
    d.r = std::nullopt;
  }
  return d;
}

inline int cmd_plot(const std::vector<fs::path>& inputs, const fs::path& out, const PlotOptions& opt, std::ostream& log) {
  std::vector<ReportSummary> reports;
  for (const auto& f : collect_reports(inputs)) reports.push_back(load_report(f));
  if (reports.empty() && !opt.instance) {
    log << "plot: nothing to plot\n";
    return kUsage;
  }
  const auto maps = detail::instance_mappings(reports);
  std::string fronts_csv = "instance,algorithm,tuned,seed,combined,risk,length_m,energy_j\n";
  std::string conv_csv = "instance,algorithm,tuned,seed,generation,evaluations,hv\n";
  std::string paths_csv = "instance,algorithm,tuned,seed,member,step,row,col,entry_altitude_m\n";
  std::map<std::string, std::map<std::string, std::map<bool, std::vector<Point2>>>> scatter;
  std::map<std::string, std::vector<svg::Series>> traces;
  for (const auto& r : reports) {
    const auto& m = maps.at(r.instance);
    auto& pts = scatter[r.instance][r.algorithm][r.tuned];
    for (const auto& z : r.front) {
      const Point2 p = metric_point(z, m.bounds);
      pts.push_back(p);
      fronts_csv += r.instance + "," + r.algorithm + "," + (r.tuned ? "1" : "0") + "," + std::to_string(r.seed) + "," + detail::fmt(p[0]) +
                    "," + detail::fmt(p[1]) + "," + detail::fmt(z.length) + "," + detail::fmt(z.energy) + "\n";
    }
    if (r.front.empty()) log << "warning: empty front in " << r.instance << " / " << r.algorithm << "\n";
    svg::Series trace{r.algorithm + (r.tuned ? " tuned" : " untuned") + " s" + std::to_string(r.seed), {}};
    for (const auto& s : r.trace) {
      trace.points.push_back({static_cast<double>(s.evaluations), s.hv});
      conv_csv += r.instance + "," + r.algorithm + "," + (r.tuned ? "1" : "0") + "," + std::to_string(r.seed) + "," +
                  std::to_string(s.generation) + "," + std::to_string(s.evaluations) + "," + detail::fmt(s.hv) + "\n";
    }
    traces[r.instance].push_back(std::move(trace));
    for (std::size_t k = 0; k < r.paths.size(); ++k) {
      for (std::size_t step = 0; step < r.paths[k].size(); ++step) {
        const auto& p = r.paths[k][step];
        paths_csv += r.instance + "," + r.algorithm + "," + (r.tuned ? "1" : "0") + "," + std::to_string(r.seed) + "," +
                     std::to_string(k) + "," + std::to_string(step) + "," + std::to_string(static_cast<int>(p[0])) + "," +
                     std::to_string(static_cast<int>(p[1])) + "," + detail::fmt(p[2]) + "\n";
      }
    }
  }
  if (!reports.empty()) {
    write_text(out / "fronts.csv", fronts_csv);
    write_text(out / "convergence.csv", conv_csv);
    write_text(out / "paths.csv", paths_csv);
    for (const auto& [inst, by_algo] : scatter) {
      for (const auto& [algo, by_flag] : by_algo) {
        svg::Chart c{inst + " " + detail::pretty(algo), "combined length/energy", "risk", {}, {}, false};
        for (bool t : {true, false}) {
          if (by_flag.contains(t)) c.series.push_back({t ? "tuned" : "untuned", by_flag.at(t)});
        }
        write_text(out / ("front_" + inst + "_" + algo + ".svg"), svg::render(c));
      }
      svg::Chart conv{inst + " HV convergence", "evaluations", "hypervolume", traces[inst], {}, true};
      write_text(out / ("convergence_" + inst + ".svg"), svg::render(conv));
    }
  }
  if (opt.instance) {
    const Environment env = load_instance(*opt.instance);
    const CorrelationData d = correlation_sample(env, opt.drone, opt.samples, opt.seed);
    std::string csv = "length_m,energy_j\n";
    svg::Series s{"random paths", {}};
    for (std::size_t i = 0; i < d.length.size(); ++i) {
      csv += detail::fmt(d.length[i]) + "," + detail::fmt(d.energy[i]) + "\n";
      s.points.push_back({d.length[i], d.energy[i]});
    }
    char note[64];
    if (d.r) {
      std::snprintf(note, sizeof note, "r = %.3f", *d.r);
    } else {
      std::snprintf(note, sizeof note, "r undefined (zero variance)");
    }
    write_text(out / "correlation.csv", csv);
    write_text(out / "correlation.svg", svg::render({"length vs energy", "length (m)", "energy (J)", {s}, note, false}));
    log << "correlation " << note << "\n";
  }
  return kOk;
}

// ---- check ----------------------------------------------------------------

inline Json check_json(const CheckReport& r) {
  Json j;
  j["ok"] = r.ok();
  j["front_size"] = r.front_size;
  j["paths"] = r.paths;
  j["checked"] = r.checked;
  j["exhaustive"] = r.exhaustive;
  j["max_relative_error"] = r.max_relative_error;
  j["lp_rows"] = r.lp_rows;
  j["lp_variables"] = r.lp_variables;
  Json fam = Json::object();
  for (const auto& [f, caught] : r.family_caught) fam[f] = caught;
  j["mutation_test"] = std::move(fam);
  j["untestable_families"] = r.untestable;
  j["failures"] = r.failures;
  return j;
}

inline int cmd_check(const Environment& env, const DroneParams& params, const CheckOptions& opt,
                     const std::optional<fs::path>& out, std::ostream& log) {
  CheckReport r;
  try {
    r = run_check(env, params, opt);
  } catch (const TooLargeError& e) {
    log << "check refused: " << e.what() << "\n";
    return kRunFailure;
  }
  log << "exact front: " << r.front_size << " members over " << r.paths << " paths\n";
  log << "checked " << r.checked << (r.exhaustive ? " assignments (all)" : " assignments (front plus samples)")
      << ", max evaluator difference " << r.max_relative_error << "\n";
  log << "lp: " << r.lp_variables << " variables, " << r.lp_rows << " rows\n";
  for (const auto& [f, caught] : r.family_caught) log << "  mutation " << f << ": " << (caught ? "caught" : "MISSED") << "\n";
  for (const auto& f : r.untestable) log << "  mutation " << f << ": not reachable on this instance\n";
  for (const auto& f : r.failures) log << "FAIL " << f << "\n";
  if (out) {
    write_text(*out / "check.json", check_json(r).dump(1) + "\n");
    write_text(*out / "exact_front.json", exact_front_json(enumerate(env, params, opt.caps), env).dump(1) + "\n");
  }
  log << (r.ok() ? "check passed\n" : "check FAILED\n");
  return r.ok() ? kOk : kCheckFailure;
}

// ---- lp-export ------------------------------------------------------------

inline int cmd_lp_export(const Environment& env, const DroneParams& params, const LpObjective& objective,
                         const fs::path& out, std::ostream& log) {
  try {
    const MilpModel m = build_milp(env, params, objective);
    write_text(out, to_lp_text(m));
    log << "wrote " << out.string() << " (" << m.variables.size() << " variables, " << m.rows.size() << " rows)\n";
  } catch (const TooLargeError& e) {
    log << e.what() << "\n";
    return kRunFailure;
  }
  return kOk;
}

}  // namespace uavpath::cli

#endif  // UAVPATH_COMMANDS_HPP_
