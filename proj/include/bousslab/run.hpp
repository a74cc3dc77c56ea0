#pragma once

#include "bousslab/config.hpp"
#include "bousslab/diagnostics.hpp"
#include "bousslab/solver.hpp"

#include <functional>
#include <string>
#include <string_view>

namespace bousslab {

enum class StopReason { completed, under_resolved, blow_up };

std::string_view to_string(StopReason r);

struct RunSummary {
  double final_t = 0.0;
  StopReason reason = StopReason::completed;
  long steps = 0;
  long records = 0;
  std::string message;
};

using RecordSink = std::function<void(const DiagnosticsRecord&)>;
using StateSink = std::function<void(const SimState&)>;

/// Integrates the configured experiment from its initial data.
///
/// A record is taken every `cadence` steps, at the final state, and when
/// the resolution monitor exceeds kTailFractionLimit (which stops the run).
/// Budget residuals need the neighbouring records, so each record reaches
/// `sink` one record late. Blow-up is reported in the summary, not thrown.
/// `states`, when given, receives every recorded state immediately.
RunSummary run(const RunConfig& config, const RecordSink& sink,
               const StateSink& states = nullptr);

}  // namespace bousslab
