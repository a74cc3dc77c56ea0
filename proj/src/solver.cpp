#include "bousslab/solver.hpp"

#include "bousslab/diagnostics.hpp"
#include "bousslab/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace bousslab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSpeedFloor = 1e-12;

SpectralField sampled(const Grid& grid, const std::function<double(double, double)>& f) {
  return forward_transform(PhysicalField::from_function(grid, f));
}

SpectralField advection(const PhysicalField& u1, const PhysicalField& u2,
                        const SpectralField& f) {
  const PhysicalField d1 = inverse_transform(derivative(f, Axis::x1));
  const PhysicalField d2 = inverse_transform(derivative(f, Axis::x2));
  SpectralField out = dealias(forward_transform(u1 * d1 + u2 * d2));
  // Advection of a periodic field by a divergence-free velocity has zero mean.
  out.coeffs()(0, 0) = 0.0;
  return out;
}

void check_forcing_class(const ForcingSpec::Generator& generator, double M, double lambda) {
  const Grid grid(64);
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const ForcingField f = generator(grid, t);
    const double mean = std::hypot(f.f1.mean(), f.f2.mean());
    if (mean > 1e-12 * std::max(M, 1.0))
      throw PreconditionError("curl_forced: generator is not mean-zero at t=" +
                              std::to_string(t));
    for (double p : {2.0, 4.0, 8.0, 16.0, 64.0}) {
      const double norm = lp_norm(f.f1, f.f2, p);
      const double bound = std::pow(p, lambda) * M;
      if (norm > bound * (1.0 + 1e-12))
        throw PreconditionError("curl_forced: ||f||_{L^" + std::to_string(int(p)) + "} = " +
                                std::to_string(norm) + " exceeds p^lambda M = " +
                                std::to_string(bound));
    }
  }
}

}  // namespace

Velocity velocity(const SimState& state) {
  Velocity u = biot_savart(state.omega_hat);
  if (state.nonzero_mean) {
    u.u1.coeffs()(0, 0) = state.mean_velocity.x();
    u.u2.coeffs()(0, 0) = state.mean_velocity.y();
  }
  return u;
}

// ---------------------------------------------------------------------------
// Forcing

std::string_view to_string(ForcingVariant v) {
  switch (v) {
    case ForcingVariant::boussinesq: return "boussinesq";
    case ForcingVariant::curl_forced: return "curl_forced";
    case ForcingVariant::none: return "none";
  }
  return "?";
}

ForcingVariant parse_forcing_variant(std::string_view name) {
  if (name == "boussinesq") return ForcingVariant::boussinesq;
  if (name == "curl_forced") return ForcingVariant::curl_forced;
  if (name == "none") return ForcingVariant::none;
  throw PreconditionError("unknown forcing variant '" + std::string(name) + "'");
}

ForcingSpec ForcingSpec::boussinesq() { return {ForcingVariant::boussinesq, 0.0, 0.0, {}}; }

ForcingSpec ForcingSpec::none() { return {ForcingVariant::none, 0.0, 0.0, {}}; }

ForcingSpec ForcingSpec::curl_forced(double M, double lambda, double speed) {
  const double a = M / std::numbers::sqrt2;
  return curl_forced(M, lambda, [a, speed](const Grid& grid, double t) {
    return ForcingField{
        PhysicalField::from_function(
            grid, [&](double, double x2) { return a * std::sin(kTwoPi * (x2 + speed * t)); }),
        PhysicalField::from_function(
            grid, [&](double x1, double) { return a * std::sin(kTwoPi * (x1 - speed * t)); })};
  });
}

ForcingSpec ForcingSpec::curl_forced(double M, double lambda, Generator generator) {
  if (!(M >= 1.0)) throw PreconditionError("curl_forced: amplitude M must be >= 1");
  if (!(lambda >= 0.0)) throw PreconditionError("curl_forced: lambda must be >= 0");
  ForcingSpec spec(ForcingVariant::curl_forced, M, lambda, std::move(generator));
  check_forcing_class(spec.generator_, M, lambda);
  return spec;
}

ForcingField ForcingSpec::evaluate(const Grid& grid, double t) const {
  if (variant_ != ForcingVariant::curl_forced)
    throw PreconditionError("ForcingSpec::evaluate: no body force for this variant");
  return generator_(grid, t);
}

SpectralField ForcingSpec::vorticity_source(const SimState& state, double t) const {
  switch (variant_) {
    case ForcingVariant::boussinesq:
      return derivative(state.rho_hat, Axis::x1);
    case ForcingVariant::curl_forced: {
      const ForcingField f = evaluate(state.grid(), t);
      // div F with F = (f2, -f1), i.e. the curl of f.
      return derivative(forward_transform(f.f2), Axis::x1) -
             derivative(forward_transform(f.f1), Axis::x2);
    }
    case ForcingVariant::none:
      break;
  }
  return SpectralField(state.grid());
}

// ---------------------------------------------------------------------------
// Time stepping

void StepPolicy::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw PreconditionError("cfl must be in (0, 1]");
  if (!(dt_min > 0.0)) throw PreconditionError("dt_min must be positive");
  if (!(dt_min <= dt_max)) throw PreconditionError("dt_min must not exceed dt_max");
  if (!(t_end >= 0.0)) throw PreconditionError("t_end must be >= 0");
}

Tendency explicit_rhs(const SimState& state, const ForcingSpec& forcing) {
  const Velocity u = velocity(state);
  const PhysicalField u1 = inverse_transform(u.u1);
  const PhysicalField u2 = inverse_transform(u.u2);
  Tendency out{-advection(u1, u2, state.omega_hat), -advection(u1, u2, state.rho_hat)};
  out.domega += forcing.vorticity_source(state, state.t);
  if (!out.domega.coeffs().allFinite() || !out.drho.coeffs().allFinite())
    throw BlowUpError("non-finite tendency at t=" + std::to_string(state.t), state.t);
  return out;
}

SimState step(const SimState& state, double dt, const ForcingSpec& forcing) {
  if (!(dt > 0.0)) throw PreconditionError("step: dt must be positive");
  const Grid& grid = state.grid();
  const Eigen::ArrayXXd decay_half = (-0.5 * dt * grid.kappa_squared()).exp();
  const Eigen::ArrayXXd decay_full = decay_half * decay_half;
  const double rho_mean = state.rho_hat.mean().real();

  auto stage = [&](double c, SpectralField omega, SpectralField rho) {
    SimState s(grid);
    s.t = state.t + c * dt;
    s.omega_hat = std::move(omega);
    s.rho_hat = std::move(rho);
    s.nonzero_mean = state.nonzero_mean;
    s.mean_velocity = state.mean_velocity;
    // Mean momentum is driven only by the constant mean buoyancy.
    if (state.nonzero_mean) s.mean_velocity.y() += c * dt * rho_mean;
    return s;
  };
  auto decayed = [](SpectralField f, const Eigen::ArrayXXd& factor) {
    f.coeffs() *= factor;
    return f;
  };

  const SpectralField& w = state.omega_hat;
  const SpectralField& r = state.rho_hat;
  const double h = dt;

  const Tendency k1 = explicit_rhs(state, forcing);
  const Tendency k2 = explicit_rhs(
      stage(0.5, decayed(w + 0.5 * h * k1.domega, decay_half), r + 0.5 * h * k1.drho), forcing);
  const Tendency k3 = explicit_rhs(
      stage(0.5, decayed(w, decay_half) + 0.5 * h * k2.domega, r + 0.5 * h * k2.drho), forcing);
  const Tendency k4 =
      explicit_rhs(stage(1.0, decayed(w, decay_full) + h * decayed(k3.domega, decay_half),
                         r + h * k3.drho),
                   forcing);

  SpectralField omega_next =
      decayed(w, decay_full) +
      (h / 6.0) * (decayed(k1.domega, decay_full) +
                   2.0 * decayed(k2.domega + k3.domega, decay_half) + k4.domega);
  SpectralField rho_next =
      r + (h / 6.0) * (k1.drho + 2.0 * k2.drho + 2.0 * k3.drho + k4.drho);
  return stage(1.0, std::move(omega_next), std::move(rho_next));
}

double max_speed(const SimState& state) {
  const Velocity u = velocity(state);
  const PhysicalField u1 = inverse_transform(u.u1);
  const PhysicalField u2 = inverse_transform(u.u2);
  return (u1.samples().square() + u2.samples().square()).sqrt().maxCoeff();
}

double choose_dt(const SimState& state, const StepPolicy& policy) {
  const double speed = std::max(max_speed(state), kSpeedFloor);
  const double dt = std::clamp(policy.cfl * state.grid().dx() / speed, policy.dt_min,
                               policy.dt_max);
  return std::max(0.0, std::min(dt, policy.t_end - state.t));
}

// ---------------------------------------------------------------------------
// Initial data

std::string_view to_string(Preset p) {
  switch (p) {
    case Preset::taylor_green: return "taylor-green";
    case Preset::rho_stripe: return "rho-stripe";
    case Preset::random_bandlimited: return "random-bandlimited";
    case Preset::zero: return "zero";
  }
  return "?";
}

Preset parse_preset(std::string_view name) {
  if (name == "taylor-green") return Preset::taylor_green;
  if (name == "rho-stripe") return Preset::rho_stripe;
  if (name == "random-bandlimited") return Preset::random_bandlimited;
  if (name == "zero") return Preset::zero;
  throw PreconditionError("unknown preset '" + std::string(name) + "'");
}

double InitialParams::amplitude_for(Preset preset) const {
  if (amplitude) return *amplitude;
  return preset == Preset::rho_stripe ? 20.0 : 1.0;
}

SimState initial_data(Preset preset, const Grid& grid, std::uint64_t seed,
                      const InitialParams& params, bool nonzero_mean) {
  SimState s(grid);
  const double A = params.amplitude_for(preset);
  switch (preset) {
    case Preset::zero:
      break;
    case Preset::taylor_green:
      s.omega_hat = sampled(grid, [A](double x1, double x2) {
        return 4.0 * std::numbers::pi * A * std::sin(kTwoPi * x1) * std::sin(kTwoPi * x2);
      });
      break;
    case Preset::rho_stripe: {
      const double eps = params.perturbation;
      s.rho_hat = sampled(grid, [A, eps](double x1, double x2) {
        return A * (std::sin(kTwoPi * x2) + eps * std::cos(kTwoPi * x1));
      });
      break;
    }
    case Preset::random_bandlimited: {
      const int band = std::min(params.band, grid.n() / 6);
      if (band < 1) throw PreconditionError("random-bandlimited: band must be >= 1");
      s.omega_hat = A * random_bandlimited(grid, band, seed);
      s.rho_hat = A * random_bandlimited(grid, band, seed + 0x9E3779B97F4A7C15ULL);
      break;
    }
  }
  s.omega_hat = project_mean_zero(s.omega_hat);
  s.rho_hat = project_mean_zero(s.rho_hat);
  s.rho_hat.coeffs()(0, 0) = params.rho_mean;
  s.nonzero_mean = nonzero_mean;
  if (nonzero_mean) s.mean_velocity = params.mean_velocity;
  return s;
}

}  // namespace bousslab
