#include "bousslab/config.hpp"
#include "bousslab/errors.hpp"
#include "bousslab/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace bousslab;

namespace {

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config '" + path + "'");
  std::stringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str());
  } catch (const ConfigError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral Boussinesq laboratory"};
  app.require_subcommand(1);

  std::vector<std::string> config_paths;
  int jobs = 1;
  auto* run_cmd = app.add_subcommand("run", "Run one experiment, or a sweep of several");
  run_cmd->add_option("configs", config_paths, "key=value config file(s)")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--jobs,-j", jobs, "Concurrent runs in sweep mode")
      ->check(CLI::PositiveNumber);

  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "Run a property suite");
  verify_cmd->add_option("suite", suite, "operators, budgets, recursion, nash-lemma or all")
      ->required();

  std::string fit_csv, fit_column;
  std::optional<double> fit_from, fit_to;
  auto* fit_cmd = app.add_subcommand("fit", "Fit log(column) against t");
  fit_cmd->add_option("csv", fit_csv, "Diagnostics CSV")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("column", fit_column, "Column to fit")->required();
  fit_cmd->add_option("--from", fit_from, "Window start time");
  fit_cmd->add_option("--to", fit_to, "Window end time");

  std::string plot_csv, plot_out;
  PlotOptions plot;
  auto* plot_cmd = app.add_subcommand("plot", "Render columns of a CSV as SVG");
  plot_cmd->add_option("csv", plot_csv, "Diagnostics CSV")->required()->check(CLI::ExistingFile);
  plot_cmd->add_option("--columns,-c", plot.columns, "Columns to plot")
      ->required()
      ->delimiter(',');
  plot_cmd->add_option("--out,-o", plot_out, "Output SVG path")->required();
  plot_cmd->add_flag("--log", plot.log_scale, "Logarithmic value axis");
  plot_cmd->add_option("--title", plot.title, "Chart title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    if (*run_cmd) {
      if (config_paths.size() == 1) return cmd_run(load_config(config_paths.front()), std::cout);
      std::vector<RunConfig> configs;
      for (const auto& p : config_paths) configs.push_back(load_config(p));
      return cmd_sweep(configs, jobs, std::cout);
    }
    if (*verify_cmd) return cmd_verify(suite, std::cout);
    if (*fit_cmd) return cmd_fit(fit_csv, fit_column, FitWindow{fit_from, fit_to}, std::cout);
    if (*plot_cmd) return cmd_plot(plot_csv, plot, plot_out, std::cout);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::internal;
  }
  return exit_code::internal;
}
