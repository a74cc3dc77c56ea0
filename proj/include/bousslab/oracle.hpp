#pragma once

#include <vector>

namespace bousslab::oracle {

/// Parameters of the bounding recursions. mu is derived from lambda.
struct RecursionParams {
  double C0 = 1.0;
  double C1 = 1.0;
  double M = 2.0;
  double lambda = 0.0;

  double mu() const noexcept { return 2.0 + 2.0 * lambda; }
  /// Throws PreconditionError unless 1 <= C0 <= C1, M >= 1, lambda >= 0, all finite.
  void validate() const;
};

/// Natural logs of a sequence, index k starting at 1.
struct LogSequence {
  std::vector<double> values;

  int size() const noexcept { return static_cast<int>(values.size()); }
  /// log of term k, 1 <= k <= size().
  double at(int k) const;
};

/// M_1 = C0 M^2,
/// M_{k+1} = C0 max{p_k M_k^2, p_k^{2(1+lambda)p_k/(p_k+1)} (M_k M)^{2p_k/(p_k+1)}},
/// p_k = 2^k.
LogSequence m_sequence(const RecursionParams& params, int kmax);

/// R_1 = C1 2^mu M^2, R_{k+1} = C1 p_k^mu R_k^2.
LogSequence r_sequence(const RecursionParams& params, int kmax);

/// log of (2^mu C1)^{2^k - 1} M^{2^k}.
double r_closed_form(const RecursionParams& params, int k);

struct DominanceResult {
  bool holds = true;
  /// First k with log M_k > log R_k + 1e-12, or 0.
  int first_failure = 0;
  /// max_k (log M_k - log R_k).
  double worst_gap = 0.0;
};

/// Compares m_sequence against r_sequence term by term.
DominanceResult dominance_check(const RecursionParams& params, int kmax);

struct UniformBound {
  /// max_k (log M_k) / 2^k.
  double max_scaled_log = 0.0;
  int argmax = 0;
  /// log(2^mu C1 M).
  double log_bound = 0.0;
  bool holds = true;
};

UniformBound uniform_bound_extract(const RecursionParams& params, int kmax);

/// prod_{j=1}^k (1 - 2^-j).
double beta_partial(int k);
/// Extends the product until the change drops below tol.
double beta_limit(double tol);

/// First time the solution of y' = a - y^2/a from y0 reaches 2a, found with
/// an adaptive Dormand-Prince integrator and event location. Zero when
/// y0 <= 2a.
double riccati_settling(double a, double y0);
/// arccoth(2) - arccoth(y0/a) for y0 > 2a, else 0.
double riccati_settling_exact(double a, double y0);

/// sum_{k=1}^{kmax} C / 2^k.
double time_shift_sum(int kmax, double C);

}  // namespace bousslab::oracle
