#pragma once

#include "bousslab/multipliers.hpp"
#include "bousslab/spectral.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace bousslab {

/// Prognostic variables of the vorticity-form system at time t.
///
/// `mean_velocity` is only evolved by the nonzero-mean variant; in the
/// default mean-zero setting it stays zero.
struct SimState {
  double t = 0.0;
  SpectralField omega_hat;
  SpectralField rho_hat;
  Eigen::Vector2d mean_velocity = Eigen::Vector2d::Zero();
  bool nonzero_mean = false;

  explicit SimState(const Grid& grid) : omega_hat(grid), rho_hat(grid) {}
  const Grid& grid() const noexcept { return omega_hat.grid(); }
};

/// Full velocity of a state (Biot-Savart plus the mean mode).
Velocity velocity(const SimState& state);

enum class ForcingVariant { boussinesq, curl_forced, none };

std::string_view to_string(ForcingVariant v);
ForcingVariant parse_forcing_variant(std::string_view name);

/// Body force f = (f1, f2) sampled at time t.
struct ForcingField {
  PhysicalField f1;
  PhysicalField f2;
};

/// Source term of the vorticity equation.
///
/// boussinesq: buoyancy rho e2, so curl contributes d1 rho.
/// curl_forced: a prescribed mean-zero body force f with
///   ||f(t)||_{L^p} <= p^lambda M; its curl is div F with F = (f2, -f1).
/// none: unforced Navier-Stokes.
class ForcingSpec {
 public:
  using Generator = std::function<ForcingField(const Grid&, double t)>;

  static ForcingSpec boussinesq();
  static ForcingSpec none();
  /// Travelling-wave force (M/sqrt(2)) (sin 2pi(x2 + c t), sin 2pi(x1 - c t)).
  /// Its pointwise magnitude never exceeds M.
  static ForcingSpec curl_forced(double M, double lambda, double speed = 1.0);
  /// Custom generator; checked for zero mean and the L^p growth bound at
  /// p in {2, 4, 8, 16, 64} over sample times in [0, 1]. 64 stands in for
  /// p = infinity. Throws PreconditionError when a check fails.
  static ForcingSpec curl_forced(double M, double lambda, Generator generator);

  ForcingVariant variant() const noexcept { return variant_; }
  double amplitude() const noexcept { return amplitude_; }
  double lambda() const noexcept { return lambda_; }

  /// Body force at time t; only valid for curl_forced.
  ForcingField evaluate(const Grid& grid, double t) const;
  /// Vorticity source at time t: d1 rho, curl f, or zero.
  SpectralField vorticity_source(const SimState& state, double t) const;

 private:
  ForcingSpec(ForcingVariant v, double M, double lambda, Generator g)
      : variant_(v), amplitude_(M), lambda_(lambda), generator_(std::move(g)) {}

  ForcingVariant variant_;
  double amplitude_;
  double lambda_;
  Generator generator_;
};

struct StepPolicy {
  double cfl = 0.4;
  double dt_max = 1e-3;
  double dt_min = 1e-10;
  double t_end = 1.0;

  /// Throws PreconditionError unless 0 < cfl <= 1, 0 < dt_min <= dt_max, t_end >= 0.
  void validate() const;
};

struct Tendency {
  SpectralField domega;
  SpectralField drho;
};

/// Non-diffusive tendency: -dealias(u.grad omega) + source, -dealias(u.grad rho).
/// The mean mode of both advection terms is zeroed. Throws BlowUpError on
/// non-finite output.
Tendency explicit_rhs(const SimState& state, const ForcingSpec& forcing);

/// One integrating-factor RK4 step. Viscous decay exp(-|kappa|^2 dt) of
/// omega is exact per mode; rho has no diffusion.
SimState step(const SimState& state, double dt, const ForcingSpec& forcing);

/// Grid maximum of |u|, mean velocity included.
double max_speed(const SimState& state);

/// clamp(cfl dx / max(|u|_inf, eps), dt_min, dt_max), never past t_end.
double choose_dt(const SimState& state, const StepPolicy& policy);

enum class Preset { taylor_green, rho_stripe, random_bandlimited, zero };

std::string_view to_string(Preset p);
Preset parse_preset(std::string_view name);

struct InitialParams {
  /// Scale of the density (rho-stripe, random) or vorticity (taylor-green).
  /// Unset selects the preset default: 20 for rho-stripe, else 1.
  std::optional<double> amplitude;
  /// Relative size of the symmetry-breaking mode added to the rho stripe.
  double perturbation = 1.0;
  /// Highest mode max(|k1|,|k2|) of random-bandlimited data; capped at n/6.
  int band = 4;
  /// Constant added to rho (the presets are otherwise mean-zero).
  double rho_mean = 0.0;
  /// Initial mean velocity; only used by the nonzero-mean variant.
  Eigen::Vector2d mean_velocity = Eigen::Vector2d::Zero();

  double amplitude_for(Preset preset) const;
};

/// Smooth band-limited initial data. Presets:
///   zero:               omega = rho = 0
///   taylor-green:       omega = 4 pi A sin(2 pi x1) sin(2 pi x2), rho = 0
///   rho-stripe:         omega = 0, rho = A (sin(2 pi x2) + eps cos(2 pi x1))
///   random-bandlimited: omega and rho from random_bandlimited, deterministic in seed
SimState initial_data(Preset preset, const Grid& grid, std::uint64_t seed,
                      const InitialParams& params = {}, bool nonzero_mean = false);

}  // namespace bousslab
