#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "semiaut_tools/config.hpp"
#include "semiaut_tools/experiments.hpp"

int main(int argc, char** argv) {
  using namespace semiaut::tools;
  CLI::App app{"Experiment driver for circle domains, their automorphisms and Bergman kernels"};
  app.require_subcommand(0, 1);
  bool describe = false;
  app.add_flag("--describe-config", describe, "print every config knob with its default and exit");

  std::string config_path, out_dir;
  bool quick = false;
  std::vector<std::pair<std::string, CLI::App*>> subs;
  auto add = [&](const std::string& name, const std::string& summary) {
    CLI::App* sub = app.add_subcommand(name, summary);
    sub->add_option("--config", config_path, "YAML config file (sections of key: value pairs)")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (default: run.out/<subcommand>)");
    sub->add_flag("--quick", quick, "halve every grid, node and probe-count resolution");
    subs.emplace_back(name, sub);
  };
  for (const auto& sc : subcommands()) add(sc.name, sc.summary);
  add("smoke", "run every subcommand into subdirectories of the output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_ok : exit_validation;
  }
  if (describe) {
    std::cout << describe_schema();
    return exit_ok;
  }
  std::string chosen;
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) chosen = name;
  }
  if (chosen.empty()) {
    std::cerr << app.help();
    return exit_validation;
  }

  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = ExperimentConfig::load(config_path);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return exit_validation;
  }
  cfg.set_quick(quick);
  const std::filesystem::path out =
      out_dir.empty() ? std::filesystem::path(cfg.text("run", "out")) / chosen : std::filesystem::path(out_dir);
  return run_subcommand(chosen, cfg, out, config_path, std::cerr);
}
