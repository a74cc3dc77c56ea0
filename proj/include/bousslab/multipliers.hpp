#pragma once

#include "bousslab/spectral.hpp"

#include <functional>
#include <string>
#include <utility>

namespace bousslab {

/// Fourier multiplier k -> sigma(kappa1, kappa2), kappa = 2*pi*k.
///
/// The rule receives odd-symbol wavenumbers (Nyquist index zeroed, as in
/// `derivative`) together with |kappa|^2 of the true mode, so odd symbols
/// built from the first two arguments map real fields to real fields.
class MultiplierSymbol {
 public:
  using Rule = std::function<Complex(double kappa1, double kappa2, double kappa_squared)>;

  MultiplierSymbol(std::string name, Rule rule) : name_(std::move(name)), rule_(std::move(rule)) {}

  static MultiplierSymbol identity();
  /// (1 + |kappa|^2)^{s/2}, i.e. powers of (I - Laplacian)^{1/2}.
  static MultiplierSymbol helmholtz_power(double s);
  /// d/dx1 (I - Laplacian)^{-1}.
  static MultiplierSymbol R();
  /// Remainder operator of the modified-vorticity equation.
  static MultiplierSymbol N();

  Complex operator()(double kappa1, double kappa2, double kappa_squared) const {
    return rule_(kappa1, kappa2, kappa_squared);
  }
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
  Rule rule_;
};

SpectralField apply(const MultiplierSymbol& symbol, const SpectralField& field);

/// R = d1 (I - Laplacian)^{-1}: symbol i*kappa1 / (1 + |kappa|^2).
SpectralField apply_R(const SpectralField& field);

/// N: symbol -i*kappa1 / (1 + |kappa|^2).
///
/// This is the symbol for which zeta = omega - R rho obeys
///   zeta_t - Lap zeta + u.grad zeta = [R, u.grad] rho - N rho
/// exactly when omega_t - Lap omega + u.grad omega = d1 rho and
/// rho_t + u.grad rho = 0. It is order -1 and equals -R.
SpectralField apply_N(const SpectralField& field);

/// Multiplies by (1 + |kappa|^2)^{s/2}.
SpectralField apply_helmholtz_power(const SpectralField& field, double s);

struct Velocity {
  SpectralField u1;
  SpectralField u2;
};

/// Divergence-free, mean-zero velocity with curl equal to omega.
/// Throws PreconditionError when omega has a nonzero mean.
Velocity biot_savart(const SpectralField& omega);

/// ||div u||_{L2} / ||u||_{H1}; zero velocity reports 0.
double divergence_ratio(const SpectralField& u1, const SpectralField& u2);

/// [R, u.grad] rho = R(u.grad rho) - u.grad(R rho), products dealiased.
/// Requires divergence-free u (ratio <= 1e-8).
PhysicalField commutator_R_advection(const SpectralField& u1, const SpectralField& u2,
                                     const SpectralField& rho);

/// Same commutator in divergence form, d_j R(u_j rho) - u_j d_j R rho.
/// No divergence check: used as the second route for the identity residuals.
PhysicalField commutator_R_divergence_form(const SpectralField& u1, const SpectralField& u2,
                                           const SpectralField& rho);

/// ||[R,u.grad]rho - (d_j R(u_j rho) - u_j d_j R rho)||_{L2} / max(||rho||_{L2}, eps).
///
/// Small only for divergence-free u; with a compressible u the two forms
/// differ by R(rho div u). Takes no precondition so it can serve as a
/// negative control.
double commutator_identity_residual(const SpectralField& u1, const SpectralField& u2,
                                    const SpectralField& rho);

/// Relative L2 residual of
///   T([R, u.grad] rho) = [T R d_j, u_j] rho - [T d_j, u_j] R rho.
double commutator_T_identity_residual(const MultiplierSymbol& T, const SpectralField& u1,
                                      const SpectralField& u2, const SpectralField& rho);

}  // namespace bousslab
