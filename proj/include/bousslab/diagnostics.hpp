#pragma once

#include "bousslab/solver.hpp"
#include "bousslab/spectral.hpp"

#include <limits>
#include <span>
#include <vector>

namespace bousslab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Under-resolution threshold for `resolution_monitor`.
inline constexpr double kTailFractionLimit = 1e-6;

/// One row of monitored quantities.
struct DiagnosticsRecord {
  double t = 0.0;
  double l2_u = 0.0;
  double h1_u = 0.0;
  double h2_u = 0.0;
  double l2_rho = 0.0;
  double h1_rho = 0.0;
  std::vector<double> lp_omega;      // one per configured p
  double linf_omega = 0.0;
  std::vector<double> lp_grad_zeta;  // one per configured p
  double energy_residual = 0.0;
  double enstrophy_residual = 0.0;
  double tail_fraction_rho = 0.0;
  double dt_used = 0.0;
};

/// (grid mean of |f|^p)^{1/p}; p = kInfinity gives the grid max of |f|.
/// The grid max is an approximation of the true supremum.
double lp_norm(const PhysicalField& f, double p);
/// L^p norm of the pointwise Euclidean magnitude of (f1, f2).
double lp_norm(const PhysicalField& f1, const PhysicalField& f2, double p);

/// (sum_k (1 + |kappa|^2)^s |coeff(k)|^2)^{1/2}.
double sobolev_norm(const SpectralField& f, double s);
/// Same for a vector field, summing the component contributions.
double sobolev_norm(const SpectralField& f1, const SpectralField& f2, double s);

/// Grid mean of |omega|^p, p >= 2.
double phi_p(const PhysicalField& omega, double p);

/// Modified vorticity omega - R rho.
SpectralField zeta(const SimState& state);

/// sum over k = 1,2 of the grid mean of |d_k zeta|^p, p >= 2.
double psi_p(const SpectralField& zeta, double p);

/// Scalar ingredients of the energy and L^{2p} vorticity balances at one state.
///
/// Energy:    d/dt (1/2)||u||^2 = -||grad u||^2 + power
/// Vorticity: d/dt phi_{2p}/(2p) = -(2p-1) <omega^{2p-2}|grad omega|^2> + pairing
/// where power is <rho u2> (boussinesq) or <f.u> (curl_forced) and pairing is
/// <source * omega^{2p-1}>.
struct BudgetTerms {
  double t = 0.0;
  double energy = 0.0;
  double dissipation = 0.0;
  double power = 0.0;
  double vorticity_functional = 0.0;
  double vorticity_dissipation = 0.0;
  double vorticity_pairing = 0.0;
};

BudgetTerms budget_terms(const SimState& state, const ForcingSpec& forcing, int p);

/// Derivative of the quadratic through (t0,f0),(t1,f1),(t2,f2) at t0, t1 or t2.
enum class StencilPoint { first, middle, last };
double three_point_derivative(std::span<const double, 3> t, std::span<const double, 3> f,
                              StencilPoint at);

/// Both balance residuals at one point of a three-record window:
/// (dE/dt + ||grad u||^2 - power) / scale, with the rate from the quadratic
/// through the window and scale the largest |sink| + |source| in the window.
/// The window scale keeps the residual meaningful at a state of rest.
struct BudgetResidual {
  double energy = 0.0;
  double vorticity = 0.0;
};
BudgetResidual budget_residuals(std::span<const BudgetTerms, 3> window, StencilPoint at);

/// Energy balance residual at every interior state of the series, with
/// dE/dt from second-order central differences.
/// Throws PreconditionError for fewer than 3 states.
std::vector<double> energy_budget_residual(std::span<const SimState> series,
                                           const ForcingSpec& forcing);

/// L^{2p} vorticity balance residual at interior states, p even >= 2,
/// normalized by the dissipation plus |pairing|.
std::vector<double> enstrophy_budget_residual(std::span<const SimState> series,
                                              const ForcingSpec& forcing, int p);

/// Same residuals from precomputed terms; the first and last entries use
/// one-sided second-order stencils so the output has one value per input.
std::vector<double> energy_residuals_from_terms(std::span<const BudgetTerms> terms);
std::vector<double> vorticity_residuals_from_terms(std::span<const BudgetTerms> terms);

/// Least-squares fit of log(value) over a time window.
struct GrowthFit {
  double t_a = 0.0;
  double t_b = 0.0;
  int samples = 0;
  /// log v = intercept + linear_slope t + quadratic_coeff t^2.
  double intercept = 0.0;
  double linear_slope = 0.0;
  double quadratic_coeff = 0.0;
  /// Linear-only fit log v = a + b t.
  double linear_only_slope = 0.0;
  double r_squared = 0.0;
  /// Mean squared residuals of the two fits and the variance of log v.
  double residual_variance_linear = 0.0;
  double residual_variance_quadratic = 0.0;
  double log_variance = 0.0;
};

/// Fits samples with t in [t_a, t_b]. Requires >= 8 samples and positive values.
GrowthFit growth_fit(std::span<const double> t, std::span<const double> value, double t_a,
                     double t_b);

/// Fraction of sum |rho_hat|^2 (mean mode excluded) on modes with
/// max(|k1|,|k2|) > n/4. Zero field gives 0.
double resolution_monitor(const SpectralField& rho_hat);

/// ||v||_2 / (||v||_1^{1/2} ||grad v||_2^{1/2} + ||v||_1).
double inequality_probe_nash(const PhysicalField& v);

/// ||v||_p / (p^{1/2} ||v||_2^{2/p} ||grad v||_2^{1-2/p} + ||v||_2).
double inequality_probe_gn(const PhysicalField& v, double p);

/// Relative L2 residual of the modified-vorticity equation at `at`,
///   zeta_t - (Lap zeta - u.grad zeta + [R, u.grad] rho - N rho),
/// with zeta_t from the three states. Boussinesq dynamics assumed.
double zeta_equation_residual(const SimState& before, const SimState& at,
                              const SimState& after);

/// Per-interval ratio (d/dt log ||grad rho||^2) / ||grad u||_inf along a
/// series, using the interval midpoint for the velocity gradient.
std::vector<double> gronwall_ratios(std::span<const SimState> series);

/// p^{-3/2} ||grad omega||_{L^p} for each p.
std::vector<double> grad_omega_profile(const SimState& state, std::span<const double> p_list);

/// All record fields except the two budget residuals.
DiagnosticsRecord make_record(const SimState& state, std::span<const double> p_list,
                              double dt_used);

}  // namespace bousslab
