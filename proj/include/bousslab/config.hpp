#pragma once

#include "bousslab/solver.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bousslab {

/// Full description of one experiment. Keys of the config file match the
/// member names below; `policy` and `initial` members are flattened
/// (t_end, cfl, dt_max, dt_min; amplitude, perturbation, band, rho_mean,
/// mean_u1, mean_u2). There is deliberately no viscosity key.
struct RunConfig {
  int grid_n = 64;
  StepPolicy policy;
  Preset preset = Preset::taylor_green;
  std::uint64_t seed = 0;
  InitialParams initial;
  ForcingVariant forcing = ForcingVariant::boussinesq;
  double forcing_M = 1.0;
  double forcing_lambda = 0.5;
  double forcing_speed = 1.0;
  /// Steps between diagnostics records.
  int cadence = 1;
  std::vector<double> p_list{2.0, 4.0, 8.0, 16.0};
  std::string output_dir = "out";
  std::string run_name = "run";
  bool nonzero_mean = false;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  ForcingSpec forcing_spec() const;
  /// Fully resolved key=value text; parse_config(to_text()) round-trips.
  std::string to_text() const;
};

/// Flat key=value parser: one key per line, `#` starts a comment, blank
/// lines ignored. Unknown or repeated keys and malformed values throw
/// ConfigError with the 1-based line number; the result is validated.
RunConfig parse_config(std::string_view text);

}  // namespace bousslab
