#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "memctrl/cli.hpp"
#include "memctrl/runtime.hpp"

int main(int argc, char** argv) {
  memctrl::runtime::apply_thread_cap();

  CLI::App app{"memctrl: boundary steering controls for the 1D wave equation with memory"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "execute an experiment from a JSON config");
  run_cmd->add_option("config", config_path, "path to the experiment config")->required();

  std::string experiment;
  auto* tmpl_cmd =
      app.add_subcommand("print-default-config", "emit a config template for an experiment");
  tmpl_cmd
      ->add_option("experiment", experiment,
                   "steer | regularity | riesz | zeta-convergence")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (run_cmd->parsed()) return memctrl::cli::run_config_file(config_path, std::cout);
  if (tmpl_cmd->parsed()) {
    try {
      std::cout << memctrl::cli::default_config(experiment);
      return 0;
    } catch (const memctrl::Error& e) {
      std::cerr << e.what() << "\n";
      return 1;
    }
  }
  return 1;
}
