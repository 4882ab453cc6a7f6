// Command-line front end: gen, solve, tune, table, plot, check, lp-export.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uavpath/uavpath.hpp"

namespace {

using namespace uavpath;
using namespace uavpath::cli;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> workers;
  std::optional<std::string> algo;
  bool tuned = false;
  bool untuned = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON run configuration");
  sub->add_option("--seed", c.seed, "override every seed");
  sub->add_option("--out", c.out, "output directory");
  sub->add_option("--workers", c.workers, "concurrent runs");
  sub->add_option("--algo", c.algo, "spea2, nsga2 or nsga3");
  auto* t = sub->add_flag("--tuned", c.tuned, "tuned runs only");
  auto* u = sub->add_flag("--untuned", c.untuned, "untuned runs only");
  t->excludes(u);
}

RunConfig resolve(const Common& c, const std::vector<std::string>& instances) {
  RunConfig cfg = c.config.empty() ? RunConfig{} : load_config(c.config);
  Overrides o;
  o.seed = c.seed;
  if (c.out) o.out = *c.out;
  o.workers = c.workers;
  o.algo = c.algo;
  if (c.tuned) o.tuned = true;
  if (c.untuned) o.tuned = false;
  for (const auto& i : instances) o.instances.emplace_back(i);
  apply(cfg, o);
  return cfg;
}

DroneParams drone_of(const std::string& config) {
  if (config.empty()) return {};
  return load_config(config).drone;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete 3D UAV path planning with length, energy and risk objectives"};
  app.require_subcommand(1);

  Common gen_opts, solve_opts, tune_opts;
  std::vector<std::string> solve_instances, tune_instances;
  auto* gen = app.add_subcommand("gen", "generate the instance suite");
  add_common(gen, gen_opts);
  auto* solve = app.add_subcommand("solve", "run every configured algorithm on every instance");
  add_common(solve, solve_opts);
  solve->add_option("instances", solve_instances, "instance files or directories (override the config)");
  auto* tune_cmd = app.add_subcommand("tune", "random-search parameter tuning");
  add_common(tune_cmd, tune_opts);
  tune_cmd->add_option("instances", tune_instances, "instance files or directories");

  std::vector<std::string> table_inputs;
  std::string table_out = ".";
  auto* table = app.add_subcommand("table", "relative hypervolume table from run reports");
  table->add_option("reports", table_inputs, "report files, run directories or manifest.json")->required();
  table->add_option("--out", table_out, "output directory");

  std::vector<std::string> plot_inputs;
  std::string plot_out = "plots";
  std::optional<std::string> plot_instance;
  std::string plot_config;
  int plot_samples = 1000;
  std::uint64_t plot_seed = 1;
  auto* plot = app.add_subcommand("plot", "CSV and SVG figure data");
  plot->add_option("reports", plot_inputs, "report files, run directories or manifest.json");
  plot->add_option("--out", plot_out, "output directory");
  plot->add_option("--instance", plot_instance, "instance for the length/energy correlation scatter");
  plot->add_option("--samples", plot_samples, "random paths in the correlation scatter");
  plot->add_option("--seed", plot_seed, "sampling seed");
  plot->add_option("--config", plot_config, "config supplying drone parameters");

  std::optional<std::string> check_instance, check_out, check_corrupt;
  std::string check_config;
  GeneratorSettings check_gen;
  check_gen.rows = 4;
  check_gen.cols = 4;
  check_gen.level_count = 3;
  std::uint64_t check_seed = 1;
  auto* check = app.add_subcommand("check", "exact front, evaluator cross-check and LP substitution test");
  check->add_option("--instance", check_instance, "instance file (otherwise one is generated)");
  check->add_option("--rows", check_gen.rows);
  check->add_option("--cols", check_gen.cols);
  check->add_option("--levels", check_gen.level_count);
  check->add_option("--density", check_gen.obstacle_density);
  check->add_option("--seed", check_seed, "generator and sampling seed");
  check->add_option("--config", check_config, "config supplying drone parameters");
  check->add_option("--out", check_out, "directory for check.json");
  check->add_option("--corrupt", check_corrupt, "break the first row of this LP family before substituting");

  std::string lp_instance, lp_out = "model.lp", lp_objective = "length", lp_config;
  double lp_weight = 0.5, lp_epsilon = 0.0;
  auto* lp = app.add_subcommand("lp-export", "write the integer program in CPLEX LP format");
  lp->add_option("--instance", lp_instance)->required();
  lp->add_option("--out", lp_out, "LP file");
  lp->add_option("--objective", lp_objective, "length, weighted or epsilon")
      ->check(CLI::IsMember({"length", "weighted", "epsilon"}));
  lp->add_option("--weight", lp_weight, "weight of the normalized length term");
  lp->add_option("--epsilon", lp_epsilon, "risk budget for the epsilon objective");
  lp->add_option("--config", lp_config, "config supplying drone parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      RunConfig cfg = resolve(gen_opts, {});
      return cmd_gen(cfg, std::cout);
    }
    if (*solve) return cmd_solve(resolve(solve_opts, solve_instances), std::cout);
    if (*tune_cmd) return cmd_tune(resolve(tune_opts, tune_instances), std::cout);
    if (*table) {
      std::vector<fs::path> in(table_inputs.begin(), table_inputs.end());
      return cmd_table(in, table_out, std::cerr);
    }
    if (*plot) {
      PlotOptions opt;
      if (plot_instance) opt.instance = *plot_instance;
      opt.samples = plot_samples;
      opt.seed = plot_seed;
      opt.drone = drone_of(plot_config);
      std::vector<fs::path> in(plot_inputs.begin(), plot_inputs.end());
      return cmd_plot(in, plot_out, opt, std::cout);
    }
    if (*check) {
      const Environment env = check_instance ? load_instance(*check_instance) : generate(check_gen, check_seed);
      CheckOptions opt;
      opt.seed = check_seed;
      opt.corrupt_family = check_corrupt;
      std::optional<fs::path> out;
      if (check_out) out = *check_out;
      return cmd_check(env, drone_of(check_config), opt, out, std::cout);
    }
    if (*lp) {
      const Environment env = load_instance(lp_instance);
      const DroneParams drone = drone_of(lp_config);
      LpObjective obj = LpObjective::length();
      if (lp_objective == "weighted") {
        const ExactFront f = enumerate(env, drone);
        NormBounds b = uavpath::detail::empty_bounds();
        for (const auto& m : f.members) b.include(m.objectives);
        obj = LpObjective::weighted(lp_weight, b);
      } else if (lp_objective == "epsilon") {
        obj = LpObjective::epsilon_risk(lp_epsilon);
      }
      return cmd_lp_export(env, drone, obj, lp_out, std::cout);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRunFailure;
  }
  return kUsage;
}
