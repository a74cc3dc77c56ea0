#include "bousslab/run.hpp"

#include "bousslab/errors.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <vector>

namespace bousslab {

namespace {

// The energy and enstrophy residuals share one BudgetTerms; p = 2 is the
// L^4 vorticity balance.
constexpr int kBudgetP = 2;

class ResidualStream {
 public:
  explicit ResidualStream(const RecordSink& sink) : sink_(sink) {}

  void push(DiagnosticsRecord record, const BudgetTerms& terms) {
    pending_.push_back(std::move(record));
    terms_.push_back(terms);
    if (terms_.size() > 3) terms_.erase(terms_.begin());
    ++count_;
    if (count_ == 3) emit_with(StencilPoint::first);
    if (count_ >= 3) emit_with(StencilPoint::middle);
  }

  void finish() {
    if (count_ >= 3) {
      emit_with(StencilPoint::last);
      return;
    }
    while (!pending_.empty()) {
      sink_(pending_.front());
      pending_.pop_front();
    }
  }

 private:
  // Fills the oldest pending record from the last three terms.
  void emit_with(StencilPoint at) {
    const BudgetResidual r = budget_residuals(std::span<const BudgetTerms, 3>(terms_.data(), 3), at);
    DiagnosticsRecord& record = pending_.front();
    record.energy_residual = r.energy;
    record.enstrophy_residual = r.vorticity;
    sink_(record);
    pending_.pop_front();
  }

  const RecordSink& sink_;
  std::deque<DiagnosticsRecord> pending_;
  std::vector<BudgetTerms> terms_;
  long count_ = 0;
};

}  // namespace

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::completed: return "completed";
    case StopReason::under_resolved: return "under_resolved";
    case StopReason::blow_up: return "blow_up";
  }
  return "?";
}

RunSummary run(const RunConfig& config, const RecordSink& sink, const StateSink& states) {
  config.validate();
  const Grid grid(config.grid_n);
  const ForcingSpec forcing = config.forcing_spec();
  StepPolicy policy = config.policy;
  policy.validate();

  SimState state = initial_data(config.preset, grid, config.seed, config.initial,
                                config.nonzero_mean);
  RunSummary summary;
  ResidualStream stream(sink);
  auto record = [&](double dt_used) {
    stream.push(make_record(state, config.p_list, dt_used),
                budget_terms(state, forcing, kBudgetP));
    if (states) states(state);
    ++summary.records;
  };

  record(0.0);
  const double t_eps = 1e-12 * std::max(1.0, policy.t_end);
  long since_record = 0;
  try {
    while (policy.t_end - state.t > t_eps) {
      const double dt = choose_dt(state, policy);
      state = step(state, dt, forcing);
      ++summary.steps;
      ++since_record;
      const bool done = policy.t_end - state.t <= t_eps;
      const double tail = resolution_monitor(state.rho_hat);
      if (tail > kTailFractionLimit) {
        record(dt);
        summary.reason = StopReason::under_resolved;
        char buf[96];
        std::snprintf(buf, sizeof buf, "rho tail fraction %.3e exceeds %.0e", tail,
                      kTailFractionLimit);
        summary.message = buf;
        break;
      }
      if (since_record >= config.cadence || done) {
        record(dt);
        since_record = 0;
      }
    }
  } catch (const BlowUpError& e) {
    summary.reason = StopReason::blow_up;
    summary.message = e.what();
  }
  stream.finish();
  summary.final_t = state.t;
  return summary;
}

}  // namespace bousslab
