#include "bousslab/diagnostics.hpp"
#include "bousslab/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace bousslab;

namespace {

constexpr double kPi = std::numbers::pi;

PhysicalField sin_x1(const Grid& g, double a = 1.0) {
  return a * PhysicalField::from_function(g, [](double x1, double) { return std::sin(2 * kPi * x1); });
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<SimState> trajectory(SimState s, double dt, int steps_per_record, int records,
                                 const ForcingSpec& forcing) {
  std::vector<SimState> out{s};
  for (int r = 1; r < records; ++r) {
    for (int i = 0; i < steps_per_record; ++i) s = step(s, dt, forcing);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(LpNorm, ClosedForms) {
  const Grid g(32);
  for (double p : {1.0, 2.0, 3.5, 8.0, kInfinity})
    EXPECT_NEAR(lp_norm(PhysicalField::constant(g, -2.5), p), 2.5, 1e-14);
  EXPECT_NEAR(lp_norm(sin_x1(g), 2.0), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(lp_norm(sin_x1(g), 4.0), std::pow(3.0 / 8.0, 0.25), 1e-14);
  EXPECT_NEAR(lp_norm(sin_x1(g), kInfinity), 1.0, 1e-15);
  EXPECT_THROW(lp_norm(sin_x1(g), 0.5), PreconditionError);
}

TEST(LpNorm, EvenPowersAreExactForBandLimitedFields) {
  const Grid g(48);
  const SpectralField f = random_bandlimited(g, 16, 2);
  EXPECT_NEAR(lp_norm(inverse_transform(f), 2.0), std::sqrt(parseval_sum(f)), 1e-12);
  // p = 4 on a coarser band: the same field on a finer grid is the oracle.
  const SpectralField h = random_bandlimited(g, 7, 3);
  EXPECT_NEAR(lp_norm(inverse_transform(h), 4.0),
              lp_norm(inverse_transform(resample(h, Grid(128))), 4.0), 1e-13);
}

TEST(LpNorm, LargeExponentDoesNotOverflow) {
  const Grid g(16);
  EXPECT_NEAR(lp_norm(sin_x1(g, 1e30), 64.0) / 1e30, lp_norm(sin_x1(g), 64.0), 1e-14);
}

TEST(SobolevNorm, ClosedForms) {
  const Grid g(32);
  const SpectralField f = forward_transform(sin_x1(g));
  EXPECT_NEAR(sobolev_norm(f, 0.0), lp_norm(sin_x1(g), 2.0), 1e-12);
  EXPECT_NEAR(sobolev_norm(f, 1.0), std::sqrt((1 + 4 * kPi * kPi) / 2), 1e-12);
  EXPECT_EQ(sobolev_norm(SpectralField(g), 2.0), 0.0);
  const SpectralField r = random_bandlimited(g, 9, 4);
  EXPECT_NEAR(sobolev_norm(r, 0.0), lp_norm(inverse_transform(r), 2.0), 1e-12);
}

TEST(PhiPsi, ClosedForms) {
  const Grid g(32);
  EXPECT_NEAR(phi_p(PhysicalField::constant(g, -3.0), 3.0), 27.0, 1e-12);
  EXPECT_NEAR(phi_p(sin_x1(g), 2.0), 0.5, 1e-15);
  EXPECT_NEAR(phi_p(sin_x1(g), 4.0), 3.0 / 8.0, 1e-15);
  EXPECT_NEAR(phi_p(sin_x1(g, -2.0), 4.0), 16.0 * 3.0 / 8.0, 1e-13);

  SpectralField c(g);
  c.set_coeff(0, 0, 4.0);
  EXPECT_EQ(psi_p(c, 2.0), 0.0);
  const SpectralField s1 = forward_transform(sin_x1(g));
  EXPECT_NEAR(psi_p(s1, 2.0), 2 * kPi * kPi, 1e-12);
  const SpectralField s2 = forward_transform(PhysicalField::from_function(
      g, [](double, double x2) { return std::sin(2 * kPi * x2); }));
  EXPECT_NEAR(psi_p(s1 + s2, 2.0), 4 * kPi * kPi, 1e-12);
  EXPECT_THROW(phi_p(sin_x1(g), 1.5), PreconditionError);
  EXPECT_THROW(psi_p(s1, 1.0), PreconditionError);
}

TEST(PhiPsi, ScalingAndSign) {
  const Grid g(32);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SpectralField f = random_bandlimited(g, 5, seed);
    const PhysicalField w = inverse_transform(f);
    EXPECT_NEAR(phi_p(-1.7 * w, 6.0), std::pow(1.7, 6.0) * phi_p(w, 6.0),
                1e-12 * phi_p(-1.7 * w, 6.0));
    EXPECT_GE(psi_p(f, 3.0), 0.0);
  }
}

TEST(Zeta, Examples) {
  const Grid g(32);
  SimState s = initial_data(Preset::random_bandlimited, g, 1);
  s.rho_hat = SpectralField(g);
  EXPECT_TRUE((zeta(s).coeffs() == s.omega_hat.coeffs()).all());

  SimState stripe(g);
  stripe.rho_hat = forward_transform(PhysicalField::from_function(
      g, [](double, double x2) { return std::sin(2 * kPi * x2); }));
  EXPECT_EQ(zeta(stripe).max_abs(), 0.0);

  SimState column(g);
  column.rho_hat = forward_transform(sin_x1(g));
  const Complex rho1 = column.rho_hat.coeff(1, 0);
  const Complex expected = -Complex(0.0, 2 * kPi / (1 + 4 * kPi * kPi)) * rho1;
  EXPECT_NEAR(std::abs(zeta(column).coeff(1, 0) - expected), 0.0, 1e-16);
}

TEST(ThreePointDerivative, ExactOnQuadratics) {
  const std::array<double, 3> t{0.1, 0.25, 0.7};
  auto q = [](double x) { return 3.0 - 2.0 * x + 5.0 * x * x; };
  auto dq = [](double x) { return -2.0 + 10.0 * x; };
  const std::array<double, 3> f{q(t[0]), q(t[1]), q(t[2])};
  EXPECT_NEAR(three_point_derivative(t, f, StencilPoint::first), dq(t[0]), 1e-12);
  EXPECT_NEAR(three_point_derivative(t, f, StencilPoint::middle), dq(t[1]), 1e-12);
  EXPECT_NEAR(three_point_derivative(t, f, StencilPoint::last), dq(t[2]), 1e-12);
  const std::array<double, 3> bad{0.0, 0.0, 1.0};
  EXPECT_THROW(three_point_derivative(bad, f, StencilPoint::middle), PreconditionError);
}

TEST(EnergyBudget, RestStateIsBalanced) {
  const Grid g(16);
  std::vector<SimState> series(3, SimState(g));
  for (int i = 0; i < 3; ++i) series[i].t = 0.1 * i;
  EXPECT_EQ(max_abs(energy_budget_residual(series, ForcingSpec::boussinesq())), 0.0);
  EXPECT_EQ(max_abs(enstrophy_budget_residual(series, ForcingSpec::boussinesq(), 2)), 0.0);
}

TEST(EnergyBudget, TooShortSeries) {
  std::vector<SimState> series(2, SimState(Grid(16)));
  EXPECT_THROW(energy_budget_residual(series, ForcingSpec::none()), PreconditionError);
  EXPECT_THROW(enstrophy_budget_residual(series, ForcingSpec::none(), 2), PreconditionError);
  std::vector<SimState> ok(3, SimState(Grid(16)));
  EXPECT_THROW(enstrophy_budget_residual(ok, ForcingSpec::none(), 3), PreconditionError);
}

TEST(EnergyBudget, TaylorGreen) {
  const Grid g(64);
  const auto series =
      trajectory(initial_data(Preset::taylor_green, g, 0), 1e-5, 1, 5, ForcingSpec::none());
  EXPECT_LT(max_abs(energy_budget_residual(series, ForcingSpec::none())), 1e-6);
}

TEST(EnergyBudget, RhoStripe) {
  const Grid g(64);
  SimState s = initial_data(Preset::rho_stripe, g, 0);
  for (int i = 0; i < 100; ++i) s = step(s, 1e-3, ForcingSpec::boussinesq());
  const auto series = trajectory(s, 1e-4, 1, 5, ForcingSpec::boussinesq());
  EXPECT_LT(max_abs(energy_budget_residual(series, ForcingSpec::boussinesq())), 1e-5);
}

TEST(EnstrophyBudget, SingleDecayingModeFromExactStates) {
  const Grid g(32);
  const double h = 1e-6;
  std::vector<SimState> series;
  for (int i = 0; i < 3; ++i) {
    SimState s(g);
    s.t = 0.01 + i * h;
    s.omega_hat = forward_transform(sin_x1(g, std::exp(-4 * kPi * kPi * s.t)));
    series.push_back(s);
  }
  EXPECT_LT(max_abs(enstrophy_budget_residual(series, ForcingSpec::none(), 2)), 1e-8);
}

TEST(EnstrophyBudget, GenericShortRun) {
  const Grid g(64);
  const auto series = trajectory(initial_data(Preset::random_bandlimited, g, 17), 1e-5, 1, 6,
                                 ForcingSpec::boussinesq());
  EXPECT_LT(max_abs(enstrophy_budget_residual(series, ForcingSpec::boussinesq(), 2)), 1e-4);
  EXPECT_LT(max_abs(energy_budget_residual(series, ForcingSpec::boussinesq())), 1e-4);
}

TEST(BudgetResiduals, FromTermsCoverEndpoints) {
  const Grid g(32);
  const auto series = trajectory(initial_data(Preset::random_bandlimited, g, 2), 2e-5, 1, 4,
                                 ForcingSpec::boussinesq());
  std::vector<BudgetTerms> terms;
  for (const auto& s : series) terms.push_back(budget_terms(s, ForcingSpec::boussinesq(), 2));
  const auto e = energy_residuals_from_terms(terms);
  const auto v = vorticity_residuals_from_terms(terms);
  ASSERT_EQ(e.size(), 4u);
  ASSERT_EQ(v.size(), 4u);
  EXPECT_LT(max_abs(e), 1e-3);
  EXPECT_LT(max_abs(v), 1e-3);
  const auto interior = energy_budget_residual(series, ForcingSpec::boussinesq());
  EXPECT_NEAR(interior[0], e[1], 1e-15);
}

TEST(GrowthFit, ExactExponential) {
  std::vector<double> t, v;
  for (int i = 0; i <= 40; ++i) {
    t.push_back(0.05 * i);
    v.push_back(2.0 * std::exp(3.0 * t.back()));
  }
  const GrowthFit fit = growth_fit(t, v, 0.0, 2.0);
  EXPECT_EQ(fit.samples, 41);
  EXPECT_NEAR(fit.linear_slope, 3.0, 1e-9);
  EXPECT_NEAR(fit.quadratic_coeff, 0.0, 1e-9);
  EXPECT_NEAR(fit.linear_only_slope, 3.0, 1e-9);
  EXPECT_NEAR(fit.intercept, std::log(2.0), 1e-9);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
}

TEST(GrowthFit, ExactGaussian) {
  std::vector<double> t, v;
  for (int i = 0; i <= 40; ++i) {
    t.push_back(0.05 * i);
    v.push_back(std::exp(t.back() * t.back()));
  }
  const GrowthFit fit = growth_fit(t, v, 0.0, 2.0);
  EXPECT_NEAR(fit.quadratic_coeff, 1.0, 1e-9);
  EXPECT_NEAR(fit.linear_slope, 0.0, 1e-9);
  EXPECT_LT(fit.residual_variance_quadratic, 1e-18);
  EXPECT_GT(fit.residual_variance_linear, 1e-3);
}

TEST(GrowthFit, ConstantSeries) {
  std::vector<double> t, v;
  for (int i = 0; i < 10; ++i) {
    t.push_back(i);
    v.push_back(5.0);
  }
  const GrowthFit fit = growth_fit(t, v, 0.0, 9.0);
  EXPECT_NEAR(fit.linear_slope, 0.0, 1e-12);
  EXPECT_NEAR(fit.quadratic_coeff, 0.0, 1e-12);
}

TEST(GrowthFit, WindowAndScaleInvariance) {
  std::vector<double> t, v, scaled;
  for (int i = 0; i <= 60; ++i) {
    t.push_back(0.1 * i);
    v.push_back(std::exp(0.8 * t.back() + 0.3 * std::sin(3 * t.back())));
    scaled.push_back(17.0 * v.back());
  }
  const GrowthFit a = growth_fit(t, v, 1.0, 5.0);
  const GrowthFit b = growth_fit(t, scaled, 1.0, 5.0);
  EXPECT_EQ(a.samples, 41);
  EXPECT_DOUBLE_EQ(a.t_a, 1.0);
  EXPECT_DOUBLE_EQ(a.t_b, 5.0);
  EXPECT_NEAR(a.linear_slope, b.linear_slope, 1e-12);
  EXPECT_NEAR(a.quadratic_coeff, b.quadratic_coeff, 1e-12);
  EXPECT_NEAR(a.linear_only_slope, b.linear_only_slope, 1e-12);
  EXPECT_NEAR(b.intercept - a.intercept, std::log(17.0), 1e-12);
}

TEST(GrowthFit, Errors) {
  std::vector<double> t{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<double> v(10, 1.0);
  EXPECT_THROW(growth_fit(t, v, 0.0, 6.0), PreconditionError);  // 7 samples
  EXPECT_THROW(growth_fit(t, v, 5.0, 5.0), PreconditionError);
  v[4] = 0.0;
  EXPECT_THROW(growth_fit(t, v, 0.0, 9.0), PreconditionError);
}

TEST(ResolutionMonitor, Examples) {
  const Grid g(64);
  EXPECT_EQ(resolution_monitor(random_bandlimited(g, 8, 1)), 0.0);
  SpectralField tail(g);
  tail.set_mode_pair(21, 0, 1.0);
  EXPECT_DOUBLE_EQ(resolution_monitor(tail), 1.0);
  EXPECT_EQ(resolution_monitor(SpectralField(g)), 0.0);
  SpectralField mixed(g);
  mixed.set_mode_pair(1, 0, 1.0);
  mixed.set_mode_pair(0, 20, 0.5);
  mixed.set_coeff(0, 0, 100.0);
  EXPECT_NEAR(resolution_monitor(mixed), 0.25 / 1.25, 1e-15);
}

TEST(InequalityProbes, NashClosedForms) {
  const Grid g(64);
  EXPECT_NEAR(inequality_probe_nash(PhysicalField::constant(g, -3.0)), 1.0, 1e-14);
  // ||v||_1 = 2/pi, ||grad v||_2 = pi sqrt2; the grid L1 sum is exact only
  // as n grows, so the quadrature error sets the tolerance.
  const double expected =
      (1 / std::sqrt(2.0)) / (std::sqrt(2 / kPi) * std::sqrt(kPi * std::sqrt(2.0)) + 2 / kPi);
  EXPECT_NEAR(inequality_probe_nash(sin_x1(Grid(256))), expected, 1e-4);
  EXPECT_THROW(inequality_probe_nash(PhysicalField(g)), PreconditionError);
}

TEST(InequalityProbes, GagliardoNirenbergClosedForms) {
  const Grid g(32);
  const PhysicalField v = inverse_transform(random_bandlimited(g, 6, 5));
  EXPECT_NEAR(inequality_probe_gn(v, 2.0), 1 / (1 + std::sqrt(2.0)), 1e-12);
  // The gradient factor vanishes for p > 2; at p = 2 its exponent is zero.
  for (double p : {4.0, 16.0})
    EXPECT_NEAR(inequality_probe_gn(PhysicalField::constant(g, 0.4), p), 1.0, 1e-14);
  EXPECT_NEAR(inequality_probe_gn(PhysicalField::constant(g, 0.4), 2.0), 1 / (1 + std::sqrt(2.0)),
              1e-14);
  EXPECT_THROW(inequality_probe_gn(v, 1.0), PreconditionError);
  EXPECT_THROW(inequality_probe_gn(PhysicalField(g), 4.0), PreconditionError);
}

TEST(InequalityProbes, RandomFieldsStayBounded) {
  const Grid g(32);
  double nash = 0.0, gn = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PhysicalField v = inverse_transform(random_bandlimited(g, 1 + int(seed % 10), seed));
    nash = std::max(nash, inequality_probe_nash(v));
    for (double p : {4.0, 8.0, 16.0}) gn = std::max(gn, inequality_probe_gn(v, p));
  }
  EXPECT_LT(nash, 1.0);
  EXPECT_LT(gn, 1.0);
  EXPECT_GT(nash, 0.0);
  EXPECT_GT(gn, 0.0);
}

TEST(ZetaEquation, ResidualIsSecondOrderInCadence) {
  const Grid g(32);
  const ForcingSpec forcing = ForcingSpec::boussinesq();
  const SimState s0 = initial_data(Preset::random_bandlimited, g, 31);
  const double dt = 2e-5;
  std::vector<double> res;
  for (int m : {8, 4, 2}) {
    SimState a = s0, b = s0;
    for (int i = 0; i < m; ++i) b = step(b, dt, forcing);
    SimState c = b;
    for (int i = 0; i < m; ++i) c = step(c, dt, forcing);
    res.push_back(zeta_equation_residual(a, b, c));
  }
  for (std::size_t i = 0; i + 1 < res.size(); ++i)
    EXPECT_GE(std::log2(res[i] / res[i + 1]), 1.9) << res[i] << " " << res[i + 1];
}

TEST(ZetaEquation, SmallAtFineCadenceAndOrdered) {
  const Grid g(32);
  const ForcingSpec forcing = ForcingSpec::boussinesq();
  SimState a = initial_data(Preset::random_bandlimited, g, 31);
  SimState b = step(a, 1e-4, forcing);
  SimState c = step(b, 1e-4, forcing);
  const double r = zeta_equation_residual(a, b, c);
  EXPECT_LT(r, 1e-3);
  EXPECT_THROW(zeta_equation_residual(b, a, c), PreconditionError);
}

TEST(Gronwall, RatioBoundedByTwo) {
  // d/dt ||grad rho||^2 = -2 <grad rho, (grad u) grad rho> <= 2 ||grad u||_inf ||grad rho||^2.
  const Grid g(64);
  const auto series = trajectory(initial_data(Preset::random_bandlimited, g, 3), 1e-3, 5, 20,
                                 ForcingSpec::boussinesq());
  const auto ratios = gronwall_ratios(series);
  ASSERT_EQ(ratios.size(), series.size() - 1);
  for (double r : ratios) {
    EXPECT_TRUE(std::isfinite(r));
    EXPECT_LE(r, 2.05);
  }
}

TEST(GradOmegaProfile, SingleMode) {
  SimState s(Grid(64));
  s.omega_hat = forward_transform(sin_x1(s.grid()));
  const std::vector<double> p{2.0, 4.0};
  const auto prof = grad_omega_profile(s, p);
  ASSERT_EQ(prof.size(), 2u);
  EXPECT_NEAR(prof[0], std::pow(2.0, -1.5) * kPi * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(prof[1], std::pow(4.0, -1.5) * 2 * kPi * std::pow(3.0 / 8.0, 0.25), 1e-12);
}

TEST(MakeRecord, TaylorGreenValues) {
  const Grid g(64);
  const SimState s = initial_data(Preset::taylor_green, g, 0);
  const std::vector<double> p{2.0, 4.0};
  const DiagnosticsRecord r = make_record(s, p, 1e-3);
  EXPECT_EQ(r.t, 0.0);
  EXPECT_EQ(r.dt_used, 1e-3);
  EXPECT_NEAR(r.l2_u, 1 / std::sqrt(2.0), 1e-13);
  EXPECT_NEAR(r.h1_u, std::sqrt((1 + 8 * kPi * kPi) / 2), 1e-12);
  EXPECT_NEAR(r.h2_u, (1 + 8 * kPi * kPi) / std::sqrt(2.0), 1e-10);
  EXPECT_EQ(r.l2_rho, 0.0);
  ASSERT_EQ(r.lp_omega.size(), 2u);
  EXPECT_NEAR(r.lp_omega[0], 4 * kPi * 0.5, 1e-12);
  EXPECT_NEAR(r.linf_omega, 4 * kPi, 1e-12);
  EXPECT_NEAR(r.lp_omega[1], 4 * kPi * std::pow(9.0 / 64.0, 0.25), 1e-12);
  // rho = 0 so grad zeta = grad omega; ||grad omega||_2^2 = 16 pi^2 * 4 pi^2 / 2.
  EXPECT_NEAR(r.lp_grad_zeta[0], std::sqrt(32.0) * kPi * kPi, 1e-10);
  EXPECT_EQ(r.tail_fraction_rho, 0.0);
}
