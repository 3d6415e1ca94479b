#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "supercrit/config.hpp"
#include "supercrit/errors.hpp"
#include "supercrit/experiment.hpp"

namespace sc = supercrit;

namespace {

constexpr int kConfigExit = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sc::ConfigError({fmt::format("cannot read config file {}", path)});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_problems(const sc::ConfigError& e) {
  for (const auto& p : e.problems()) fmt::print(stderr, "config error: {}\n", p);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for semilinear wave and NLS equations with supercritical nonlinearities"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  std::uint64_t seed = 0;
  int jobs = 0;
  bool dry_run = false;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--output", output_dir, "root directory for experiment outputs");
  app.add_option("--seed", seed, "seed for every pseudo-random draw");
  app.add_option("--jobs", jobs, "worker threads for independent runs")->check(CLI::PositiveNumber);
  app.add_flag("--dry-run", dry_run, "print the canonical config and experiment id, run nothing");

  std::vector<CLI::App*> runners;
  for (auto kind : {sc::ExperimentKind::CheckAssumptions, sc::ExperimentKind::SimulateWave,
                    sc::ExperimentKind::SimulateNls, sc::ExperimentKind::WeakStrong,
                    sc::ExperimentKind::AppendixConstruct, sc::ExperimentKind::IdentityCheck}) {
    auto* sub = app.add_subcommand(std::string(sc::to_string(kind)));
    sub->fallthrough();
    runners.push_back(sub);
  }
  std::string export_id;
  auto* exp = app.add_subcommand("export", "write plot.csv (series,t,value) for a finished experiment");
  exp->add_option("experiment_id", export_id)->required();
  exp->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigExit;
  }

  try {
    if (exp->parsed()) {
      const auto path = sc::export_plot_data(output_dir.empty() ? "runs" : output_dir, export_id);
      fmt::print("{}\n", path.string());
      return 0;
    }

    sc::ExperimentKind kind{};
    for (auto* sub : runners) {
      if (sub->parsed()) kind = sc::parse_experiment_kind(sub->get_name());
    }
    const std::string text = config_path.empty() ? std::string() : read_file(config_path);
    auto overrides = sc::environment_overrides();
    overrides["experiment.kind"] = std::string(sc::to_string(kind));
    if (app.count("--seed")) overrides["experiment.seed"] = std::to_string(seed);
    if (app.count("--jobs")) overrides["experiment.jobs"] = std::to_string(jobs);
    if (!output_dir.empty()) overrides["experiment.output_dir"] = output_dir;
    const sc::ExperimentConfig cfg = sc::parse_config(text, overrides);

    if (dry_run) {
      fmt::print("# experiment_id = {}\n{}", sc::experiment_id(cfg), sc::serialize_config(cfg));
      return 0;
    }
    const auto m = sc::run_experiment(cfg);
    if (kind == sc::ExperimentKind::CheckAssumptions) {
      std::ifstream in(m.directory / "reports.json");
      std::cout << in.rdbuf();
    }
    fmt::print("experiment_id: {}\noutcome: {}\ndirectory: {}\n", m.experiment_id, sc::to_string(m.outcome),
               m.directory.string());
    if (!m.message.empty()) fmt::print(stderr, "{}\n", m.message);
    return sc::exit_code(m.outcome);
  } catch (const sc::ConfigError& e) {
    print_problems(e);
    return kConfigExit;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
}
