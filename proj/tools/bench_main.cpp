#include <iostream>

#include "CLI11.hpp"
#include "proxpoint/bench/config.hpp"
#include "proxpoint/bench/experiment.hpp"

using namespace proxpoint::bench;

namespace {

void report_failures(const std::vector<ExperimentResult>& results) {
  for (const auto& r : results)
    for (const auto& c : r.cells)
      if (!c.ok) std::cerr << "bench: " << r.recipe << "/" << c.solver << " failed: " << c.error << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proximal point benchmark harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_override;
  auto* run = app.add_subcommand("run", "Run every solver in a config file");
  run->add_option("config", config_path, "Experiment config")->required();
  run->add_option("-o,--output", output_override, "Override [experiment] output");

  std::string sweep_config;
  std::vector<std::string> params;
  std::string values;
  auto* sweep = app.add_subcommand("sweep", "Repeat an experiment over parameter values");
  sweep->add_option("config", sweep_config, "Experiment config")->required();
  sweep->add_option("--param", params, "Dotted key, e.g. solver.ripp.rho (repeatable)")->required();
  sweep->add_option("--values", values, "a,b,c or start:stop:step")->required();
  sweep->add_option("-o,--output", output_override, "Override [experiment] output");

  std::string dir;
  auto* summarize = app.add_subcommand("summarize", "Rebuild a summary from trace files");
  summarize->add_option("dir", dir, "Directory of traces")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      ExperimentConfig cfg = load_config(config_path);
      if (!output_override.empty()) cfg.output_path = output_override;
      auto r = run_experiment(cfg);
      write_summary(std::cout, summary_rows({r}));
      report_failures({r});
    } else if (*sweep) {
      ExperimentConfig cfg = load_config(sweep_config);
      if (!output_override.empty()) cfg.output_path = output_override;
      auto all = run_sweep(cfg, params, parse_value_list(values));
      write_summary(std::cout, summary_rows(all));
      report_failures(all);
    } else if (*summarize) {
      write_summary(std::cout, summarize_directory(dir));
    }
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
