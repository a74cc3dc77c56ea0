#include "bousslab/multipliers.hpp"

#include "bousslab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bousslab {

namespace {

constexpr Complex kI(0.0, 1.0);
constexpr double kDivergenceTolerance = 1e-8;
constexpr double kNormFloor = 1e-300;

double l2_norm(const SpectralField& f) { return std::sqrt(parseval_sum(f)); }

SpectralField times_i(SpectralField f) {
  Eigen::ArrayXXd re = f.coeffs().real();
  f.coeffs().real() = -f.coeffs().imag();
  f.coeffs().imag() = re;
  return f;
}

void require_divergence_free(const SpectralField& u1, const SpectralField& u2,
                             const char* where) {
  const double ratio = divergence_ratio(u1, u2);
  if (ratio > kDivergenceTolerance)
    throw PreconditionError(std::string(where) + ": velocity is not divergence-free (ratio " +
                            std::to_string(ratio) + ")");
}

// sum_j [A d_j, u_j] f = sum_j A d_j(u_j f) - u_j A d_j f, products dealiased.
SpectralField commutator_with_advection(const MultiplierSymbol& A, const PhysicalField& u1,
                                        const PhysicalField& u2, const SpectralField& f) {
  const PhysicalField fp = inverse_transform(f);
  SpectralField flux = apply(A, derivative(dealiased_product(u1, fp), Axis::x1) +
                                    derivative(dealiased_product(u2, fp), Axis::x2));
  const PhysicalField a1 = inverse_transform(apply(A, derivative(f, Axis::x1)));
  const PhysicalField a2 = inverse_transform(apply(A, derivative(f, Axis::x2)));
  flux -= dealiased_product(u1, a1) + dealiased_product(u2, a2);
  return flux;
}

}  // namespace

MultiplierSymbol MultiplierSymbol::identity() {
  return {"I", [](double, double, double) { return Complex(1.0, 0.0); }};
}

MultiplierSymbol MultiplierSymbol::helmholtz_power(double s) {
  return {"Lambda^" + std::to_string(s),
          [s](double, double, double ksq) { return Complex(std::pow(1.0 + ksq, 0.5 * s), 0.0); }};
}

MultiplierSymbol MultiplierSymbol::R() {
  return {"R", [](double k1, double, double ksq) { return kI * k1 / (1.0 + ksq); }};
}

MultiplierSymbol MultiplierSymbol::N() {
  return {"N", [](double k1, double, double ksq) { return -kI * k1 / (1.0 + ksq); }};
}

SpectralField apply(const MultiplierSymbol& symbol, const SpectralField& field) {
  const Grid& g = field.grid();
  const int n = g.n();
  SpectralField out(g);
  const auto& k1 = g.odd_kappa1();
  const auto& k2 = g.odd_kappa2();
  const auto& ksq = g.kappa_squared();
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a)
      out.coeffs()(a, b) = symbol(k1(a, b), k2(a, b), ksq(a, b)) * field.coeffs()(a, b);
  return out;
}

SpectralField apply_R(const SpectralField& field) {
  const Grid& g = field.grid();
  const Eigen::ArrayXXd sym = g.odd_kappa1() / (1.0 + g.kappa_squared());
  return times_i(SpectralField(g, field.coeffs() * sym));
}

SpectralField apply_N(const SpectralField& field) {
  const Grid& g = field.grid();
  const Eigen::ArrayXXd sym = -g.odd_kappa1() / (1.0 + g.kappa_squared());
  return times_i(SpectralField(g, field.coeffs() * sym));
}

SpectralField apply_helmholtz_power(const SpectralField& field, double s) {
  const Grid& g = field.grid();
  const Eigen::ArrayXXd sym = (1.0 + g.kappa_squared()).pow(0.5 * s);
  return SpectralField(g, field.coeffs() * sym);
}

Velocity biot_savart(const SpectralField& omega) {
  const Grid& g = omega.grid();
  const double mean = std::abs(omega.mean());
  if (mean > 1e-10 * std::max(omega.max_abs(), 1.0))
    throw PreconditionError("biot_savart: vorticity has nonzero mean " + std::to_string(mean));
  Eigen::ArrayXXd inv_ksq = g.kappa_squared().inverse();
  inv_ksq(0, 0) = 0.0;
  const SpectralField psi(g, omega.coeffs() * inv_ksq);
  // u = (d2 psi, -d1 psi) with -Lap psi = omega.
  return Velocity{derivative(psi, Axis::x2), -derivative(psi, Axis::x1)};
}

double divergence_ratio(const SpectralField& u1, const SpectralField& u2) {
  const double div = l2_norm(derivative(u1, Axis::x1) + derivative(u2, Axis::x2));
  const double h1 = std::sqrt(
      (u1.coeffs().abs2() * (1.0 + u1.grid().kappa_squared())).sum() +
      (u2.coeffs().abs2() * (1.0 + u2.grid().kappa_squared())).sum());
  return h1 > kNormFloor ? div / h1 : 0.0;
}

PhysicalField commutator_R_advection(const SpectralField& u1, const SpectralField& u2,
                                     const SpectralField& rho) {
  require_divergence_free(u1, u2, "commutator_R_advection");
  const PhysicalField u1p = inverse_transform(u1);
  const PhysicalField u2p = inverse_transform(u2);
  auto advect = [&](const SpectralField& f) {
    return dealiased_product(u1p, inverse_transform(derivative(f, Axis::x1))) +
           dealiased_product(u2p, inverse_transform(derivative(f, Axis::x2)));
  };
  return inverse_transform(apply_R(advect(rho)) - advect(apply_R(rho)));
}

PhysicalField commutator_R_divergence_form(const SpectralField& u1, const SpectralField& u2,
                                           const SpectralField& rho) {
  const PhysicalField u1p = inverse_transform(u1);
  const PhysicalField u2p = inverse_transform(u2);
  return inverse_transform(commutator_with_advection(MultiplierSymbol::R(), u1p, u2p, rho));
}

double commutator_identity_residual(const SpectralField& u1, const SpectralField& u2,
                                    const SpectralField& rho) {
  // Advective form computed inline so the negative control is not rejected
  // by the divergence check.
  const PhysicalField u1p = inverse_transform(u1);
  const PhysicalField u2p = inverse_transform(u2);
  auto advect = [&](const SpectralField& f) {
    return dealiased_product(u1p, inverse_transform(derivative(f, Axis::x1))) +
           dealiased_product(u2p, inverse_transform(derivative(f, Axis::x2)));
  };
  const SpectralField advective = apply_R(advect(rho)) - advect(apply_R(rho));
  const SpectralField divergence_form =
      commutator_with_advection(MultiplierSymbol::R(), u1p, u2p, rho);
  return l2_norm(advective - divergence_form) / std::max(l2_norm(rho), kNormFloor);
}

double commutator_T_identity_residual(const MultiplierSymbol& T, const SpectralField& u1,
                                      const SpectralField& u2, const SpectralField& rho) {
  require_divergence_free(u1, u2, "commutator_T_identity_residual");
  const SpectralField lhs = apply(T, forward_transform(commutator_R_advection(u1, u2, rho)));

  const PhysicalField u1p = inverse_transform(u1);
  const PhysicalField u2p = inverse_transform(u2);
  const MultiplierSymbol TR("T*R", [&T, R = MultiplierSymbol::R()](double k1, double k2,
                                                                     double ksq) {
    return T(k1, k2, ksq) * R(k1, k2, ksq);
  });
  const SpectralField rhs = commutator_with_advection(TR, u1p, u2p, rho) -
                            commutator_with_advection(T, u1p, u2p, apply_R(rho));
  return l2_norm(lhs - rhs) / std::max(l2_norm(rho), kNormFloor);
}

}  // namespace bousslab
