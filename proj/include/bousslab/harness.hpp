#pragma once

#include "bousslab/config.hpp"
#include "bousslab/diagnostics.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bousslab {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int internal = 1;
inline constexpr int blow_up = 2;
inline constexpr int usage = 64;
}  // namespace exit_code

/// Thrown for bad command-line input; maps to exit code 64.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// CSV

/// Column names in DiagnosticsRecord order; per-p columns are lp_omega_<p>
/// and lp_grad_zeta_<p>.
std::vector<std::string> csv_columns(const std::vector<double>& p_list);

/// `%.12e` formatting, independent of the global locale.
std::string format_scientific(double v);

void write_csv_header(std::ostream& out, const std::vector<double>& p_list);
void write_csv_row(std::ostream& out, const DiagnosticsRecord& record);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Throws UsageError naming the column when it is missing.
  std::size_t column_index(std::string_view name) const;
  std::vector<double> column(std::string_view name) const;
};

/// Numeric CSV with one header row. Throws std::runtime_error with the line
/// number on malformed input.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

// ---------------------------------------------------------------------------
// Commands. Each returns an exit code and writes human-readable text to `log`.

/// Runs one experiment, writing <output_dir>/<run_name>.csv, .summary and
/// .config next to each other.
int cmd_run(const RunConfig& config, std::ostream& log);

/// Runs independent configs on up to `jobs` threads. The return value is the
/// largest exit code of the individual runs.
int cmd_sweep(const std::vector<RunConfig>& configs, int jobs, std::ostream& log);

struct FitWindow {
  std::optional<double> t_a;
  std::optional<double> t_b;
};

/// Default window: rows before the resolution monitor first exceeds its limit,
/// minus the first 10% of that span. Prints `fit b=... q=... r2=...`.
int cmd_fit(const std::string& csv_path, const std::string& column, const FitWindow& window,
            std::ostream& log);

struct PlotOptions {
  std::vector<std::string> columns;
  bool log_scale = false;
  std::string title;
};

/// Static SVG line chart of the columns against t; byte-identical for
/// identical input. Throws UsageError for missing columns and for
/// nonpositive values on a log axis (naming the data row).
std::string render_svg(const CsvTable& table, const PlotOptions& options);
int cmd_plot(const std::string& csv_path, const PlotOptions& options, const std::string& out_path,
             std::ostream& log);

/// Suites: operators, budgets, recursion, nash-lemma, all. Prints one line
/// per check; returns 0 iff every check passes, 64 for an unknown suite.
int cmd_verify(const std::string& suite, std::ostream& log);

}  // namespace bousslab
