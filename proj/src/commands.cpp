#include "bousslab/harness.hpp"

#include "bousslab/errors.hpp"
#include "bousslab/run.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace bousslab {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

int cmd_run(const RunConfig& config, std::ostream& log) {
  config.validate();
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  const fs::path stem = dir / config.run_name;

  {
    auto echo = open_output(stem.string() + ".config");
    echo << config.to_text();
  }
  auto csv = open_output(stem.string() + ".csv");
  write_csv_header(csv, config.p_list);

  const auto start = std::chrono::steady_clock::now();
  const RunSummary summary =
      run(config, [&csv](const DiagnosticsRecord& r) { write_csv_row(csv, r); });
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
  csv.close();
  if (!csv) throw std::runtime_error("failed writing '" + stem.string() + ".csv'");

  {
    auto side = open_output(stem.string() + ".summary");
    side << "stop_reason=" << to_string(summary.reason) << '\n'
         << "final_t=" << format_scientific(summary.final_t) << '\n'
         << "steps=" << summary.steps << '\n'
         << "records=" << summary.records << '\n'
         << "wall_seconds=" << format_scientific(wall) << '\n';
    if (!summary.message.empty()) side << "message=" << summary.message << '\n';
  }

  log << config.run_name << ": " << to_string(summary.reason) << " at t="
      << format_scientific(summary.final_t) << " after " << summary.steps << " steps";
  if (!summary.message.empty()) log << " (" << summary.message << ")";
  log << '\n';
  return summary.reason == StopReason::blow_up ? exit_code::blow_up : exit_code::ok;
}

int cmd_sweep(const std::vector<RunConfig>& configs, int jobs, std::ostream& log) {
  if (jobs < 1) throw UsageError("--jobs must be >= 1");
  for (std::size_t i = 0; i < configs.size(); ++i)
    for (std::size_t j = i + 1; j < configs.size(); ++j)
      if (fs::path(configs[i].output_dir) / configs[i].run_name ==
          fs::path(configs[j].output_dir) / configs[j].run_name)
        throw UsageError("sweep configs " + std::to_string(i) + " and " + std::to_string(j) +
                         " write to the same output");

  std::atomic<std::size_t> next{0};
  std::atomic<int> worst{exit_code::ok};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      std::ostringstream local;
      int code = exit_code::internal;
      try {
        code = cmd_run(configs[i], local);
      } catch (const std::exception& e) {
        local << configs[i].run_name << ": error: " << e.what() << '\n';
      }
      int seen = worst.load();
      while (code > seen && !worst.compare_exchange_weak(seen, code)) {
      }
      const std::lock_guard<std::mutex> lock(log_mutex);
      log << local.str();
    }
  };
  const int threads = std::min<int>(jobs, static_cast<int>(configs.size()));
  std::vector<std::jthread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return worst.load();
}

int cmd_fit(const std::string& csv_path, const std::string& column, const FitWindow& window,
            std::ostream& log) {
  const CsvTable table = read_csv_file(csv_path);
  const std::vector<double> t = table.column("t");
  const std::vector<double> v = table.column(column);
  if (t.empty()) throw UsageError("csv has no data rows");

  double t_end = t.back();
  if (std::find(table.header.begin(), table.header.end(), "tail_fraction_rho") !=
      table.header.end()) {
    const std::vector<double> tail = table.column("tail_fraction_rho");
    for (std::size_t i = 0; i < tail.size(); ++i)
      if (tail[i] > kTailFractionLimit) {
        t_end = i > 0 ? t[i - 1] : t[0];
        break;
      }
  }
  const double t_a = window.t_a.value_or(t.front() + 0.1 * (t_end - t.front()));
  const double t_b = window.t_b.value_or(t_end);
  if (t_a < t.front() || t_b > t.back())
    throw UsageError("fit window lies outside the data range");

  const GrowthFit fit = growth_fit(t, v, t_a, t_b);
  log << "column " << column << ", window [" << format_scientific(fit.t_a) << ", "
      << format_scientific(fit.t_b) << "], " << fit.samples << " samples\n"
      << "linear:    log v = a + b t, b=" << format_scientific(fit.linear_only_slope)
      << ", r2=" << format_scientific(fit.r_squared)
      << ", residual variance=" << format_scientific(fit.residual_variance_linear) << '\n'
      << "quadratic: log v = a + b t + q t^2, b=" << format_scientific(fit.linear_slope)
      << ", q=" << format_scientific(fit.quadratic_coeff)
      << ", residual variance=" << format_scientific(fit.residual_variance_quadratic) << '\n'
      << "fit b=" << format_scientific(fit.linear_only_slope)
      << " q=" << format_scientific(fit.quadratic_coeff)
      << " r2=" << format_scientific(fit.r_squared) << '\n';
  return exit_code::ok;
}

int cmd_plot(const std::string& csv_path, const PlotOptions& options, const std::string& out_path,
             std::ostream& log) {
  const CsvTable table = read_csv_file(csv_path);
  const std::string svg = render_svg(table, options);
  auto out = open_output(out_path);
  out << svg;
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + out_path + "'");
  log << "wrote " << out_path << '\n';
  return exit_code::ok;
}

}  // namespace bousslab
