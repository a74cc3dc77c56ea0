#include "bousslab/diagnostics.hpp"

#include "bousslab/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace bousslab {

namespace {

constexpr double kTiny = 1e-300;

double l2(const SpectralField& f) { return std::sqrt(parseval_sum(f)); }

double grid_mean(const Eigen::ArrayXXd& a) { return a.mean(); }

// Integer power keeps |w|^p exact for the even exponents used by the budgets.
Eigen::ArrayXXd signed_power(const Eigen::ArrayXXd& w, int k) {
  Eigen::ArrayXXd out = Eigen::ArrayXXd::Ones(w.rows(), w.cols());
  for (int i = 0; i < k; ++i) out *= w;
  return out;
}

double lp_of_magnitude(const Eigen::ArrayXXd& magnitude, double p) {
  if (!(p >= 1.0)) throw PreconditionError("lp_norm: p must be >= 1, got " + std::to_string(p));
  if (std::isinf(p)) return magnitude.maxCoeff();
  const double peak = magnitude.maxCoeff();
  if (peak == 0.0) return 0.0;
  // Scale by the peak so large p cannot overflow.
  return peak * std::pow((magnitude / peak).pow(p).mean(), 1.0 / p);
}

void require_series(std::size_t size) {
  if (size < 3)
    throw PreconditionError("budget residual needs at least 3 states, got " +
                            std::to_string(size));
}

std::vector<double> residuals(std::span<const BudgetTerms> terms, bool energy, bool endpoints) {
  const std::size_t m = terms.size();
  std::vector<double> out;
  if (m < 3) {
    // Too short for a second-order stencil; report no imbalance.
    if (endpoints) out.assign(m, 0.0);
    return out;
  }
  auto residual_at = [&](std::size_t centre, StencilPoint at) {
    const BudgetResidual r =
        budget_residuals(std::span<const BudgetTerms, 3>(terms.data() + centre - 1, 3), at);
    return energy ? r.energy : r.vorticity;
  };
  if (endpoints) out.push_back(residual_at(1, StencilPoint::first));
  for (std::size_t i = 1; i + 1 < m; ++i) out.push_back(residual_at(i, StencilPoint::middle));
  if (endpoints) out.push_back(residual_at(m - 2, StencilPoint::last));
  return out;
}

PhysicalField physical_source(const SimState& state, const ForcingSpec& forcing) {
  return inverse_transform(forcing.vorticity_source(state, state.t));
}

}  // namespace

double lp_norm(const PhysicalField& f, double p) { return lp_of_magnitude(f.samples().abs(), p); }

double lp_norm(const PhysicalField& f1, const PhysicalField& f2, double p) {
  return lp_of_magnitude((f1.samples().square() + f2.samples().square()).sqrt(), p);
}

double sobolev_norm(const SpectralField& f, double s) {
  const Eigen::ArrayXXd weight = (1.0 + f.grid().kappa_squared()).pow(s);
  return std::sqrt((weight * f.coeffs().abs2()).sum());
}

double sobolev_norm(const SpectralField& f1, const SpectralField& f2, double s) {
  return std::hypot(sobolev_norm(f1, s), sobolev_norm(f2, s));
}

double phi_p(const PhysicalField& omega, double p) {
  if (!(p >= 2.0)) throw PreconditionError("phi_p: p must be >= 2");
  return grid_mean(omega.samples().abs().pow(p));
}

SpectralField zeta(const SimState& state) { return state.omega_hat - apply_R(state.rho_hat); }

double psi_p(const SpectralField& zeta_hat, double p) {
  if (!(p >= 2.0)) throw PreconditionError("psi_p: p must be >= 2");
  double total = 0.0;
  for (Axis axis : {Axis::x1, Axis::x2})
    total += grid_mean(inverse_transform(derivative(zeta_hat, axis)).samples().abs().pow(p));
  return total;
}

BudgetTerms budget_terms(const SimState& state, const ForcingSpec& forcing, int p) {
  if (p < 1) throw PreconditionError("budget_terms: p must be >= 1");
  BudgetTerms b;
  b.t = state.t;
  const Velocity u = velocity(state);
  b.energy = 0.5 * (parseval_sum(u.u1) + parseval_sum(u.u2));
  b.dissipation = parseval_sum(derivative(u.u1, Axis::x1)) +
                  parseval_sum(derivative(u.u1, Axis::x2)) +
                  parseval_sum(derivative(u.u2, Axis::x1)) +
                  parseval_sum(derivative(u.u2, Axis::x2));
  switch (forcing.variant()) {
    case ForcingVariant::boussinesq:
      b.power = (state.rho_hat.coeffs() * u.u2.coeffs().conjugate()).real().sum();
      break;
    case ForcingVariant::curl_forced: {
      const ForcingField f = forcing.evaluate(state.grid(), state.t);
      b.power = grid_mean(f.f1.samples() * inverse_transform(u.u1).samples() +
                          f.f2.samples() * inverse_transform(u.u2).samples());
      break;
    }
    case ForcingVariant::none:
      b.power = 0.0;
      break;
  }

  const Eigen::ArrayXXd w = inverse_transform(state.omega_hat).samples();
  const Eigen::ArrayXXd w1 = inverse_transform(derivative(state.omega_hat, Axis::x1)).samples();
  const Eigen::ArrayXXd w2 = inverse_transform(derivative(state.omega_hat, Axis::x2)).samples();
  const Eigen::ArrayXXd w_2p_minus_2 = signed_power(w, 2 * p - 2);
  b.vorticity_functional = grid_mean(w_2p_minus_2 * w * w) / (2.0 * p);
  b.vorticity_dissipation = (2.0 * p - 1.0) * grid_mean(w_2p_minus_2 * (w1 * w1 + w2 * w2));
  b.vorticity_pairing =
      grid_mean(physical_source(state, forcing).samples() * w_2p_minus_2 * w);
  return b;
}

double three_point_derivative(std::span<const double, 3> t, std::span<const double, 3> f,
                              StencilPoint at) {
  const double h0 = t[1] - t[0];
  const double h1 = t[2] - t[1];
  if (!(h0 > 0.0 && h1 > 0.0))
    throw PreconditionError("three_point_derivative: times must be increasing");
  const double s = h0 + h1;
  switch (at) {
    case StencilPoint::first:
      return -(2.0 * h0 + h1) / (h0 * s) * f[0] + s / (h0 * h1) * f[1] - h0 / (h1 * s) * f[2];
    case StencilPoint::middle:
      return -h1 / (h0 * s) * f[0] + (h1 - h0) / (h0 * h1) * f[1] + h0 / (h1 * s) * f[2];
    case StencilPoint::last:
      return h1 / (h0 * s) * f[0] - s / (h0 * h1) * f[1] + (2.0 * h1 + h0) / (h1 * s) * f[2];
  }
  return 0.0;
}

BudgetResidual budget_residuals(std::span<const BudgetTerms, 3> w, StencilPoint at) {
  const std::array<double, 3> t{w[0].t, w[1].t, w[2].t};
  const BudgetTerms& b = w[at == StencilPoint::first ? 0 : at == StencilPoint::middle ? 1 : 2];
  auto rate = [&](auto get) {
    const std::array<double, 3> f{get(w[0]), get(w[1]), get(w[2])};
    return three_point_derivative(t, f, at);
  };
  double energy_scale = kTiny, vorticity_scale = kTiny;
  for (const BudgetTerms& x : w) {
    energy_scale = std::max(energy_scale, std::abs(x.dissipation) + std::abs(x.power));
    vorticity_scale = std::max(vorticity_scale, std::abs(x.vorticity_dissipation) +
                                                    std::abs(x.vorticity_pairing));
  }
  BudgetResidual r;
  r.energy = (rate([](const BudgetTerms& x) { return x.energy; }) + b.dissipation - b.power) /
             energy_scale;
  r.vorticity = (rate([](const BudgetTerms& x) { return x.vorticity_functional; }) +
                 b.vorticity_dissipation - b.vorticity_pairing) /
                vorticity_scale;
  return r;
}

std::vector<double> energy_residuals_from_terms(std::span<const BudgetTerms> terms) {
  return residuals(terms, true, true);
}

std::vector<double> vorticity_residuals_from_terms(std::span<const BudgetTerms> terms) {
  return residuals(terms, false, true);
}

std::vector<double> energy_budget_residual(std::span<const SimState> series,
                                           const ForcingSpec& forcing) {
  require_series(series.size());
  std::vector<BudgetTerms> terms;
  for (const auto& s : series) terms.push_back(budget_terms(s, forcing, 1));
  return residuals(terms, true, false);
}

std::vector<double> enstrophy_budget_residual(std::span<const SimState> series,
                                              const ForcingSpec& forcing, int p) {
  if (p < 2 || p % 2 != 0)
    throw PreconditionError("enstrophy_budget_residual: p must be even and >= 2");
  require_series(series.size());
  std::vector<BudgetTerms> terms;
  for (const auto& s : series) terms.push_back(budget_terms(s, forcing, p));
  return residuals(terms, false, false);
}

GrowthFit growth_fit(std::span<const double> t, std::span<const double> value, double t_a,
                     double t_b) {
  if (t.size() != value.size()) throw PreconditionError("growth_fit: length mismatch");
  if (!(t_a < t_b)) throw PreconditionError("growth_fit: window must satisfy t_a < t_b");
  std::vector<double> ts, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_a || t[i] > t_b) continue;
    if (!(value[i] > 0.0))
      throw PreconditionError("growth_fit: nonpositive value " + std::to_string(value[i]) +
                              " at t=" + std::to_string(t[i]));
    ts.push_back(t[i]);
    ys.push_back(std::log(value[i]));
  }
  const int m = static_cast<int>(ts.size());
  if (m < 8)
    throw PreconditionError("growth_fit: need >= 8 samples in window, got " + std::to_string(m));

  const Eigen::Map<const Eigen::VectorXd> tv(ts.data(), m);
  const Eigen::Map<const Eigen::VectorXd> y(ys.data(), m);
  Eigen::MatrixXd quad(m, 3);
  quad.col(0).setOnes();
  quad.col(1) = tv;
  quad.col(2) = tv.array().square().matrix();
  const Eigen::Vector3d cq = quad.colPivHouseholderQr().solve(y);
  const Eigen::MatrixXd lin = quad.leftCols(2);
  const Eigen::Vector2d cl = lin.colPivHouseholderQr().solve(y);

  GrowthFit fit;
  fit.t_a = t_a;
  fit.t_b = t_b;
  fit.samples = m;
  fit.intercept = cq(0);
  fit.linear_slope = cq(1);
  fit.quadratic_coeff = cq(2);
  fit.linear_only_slope = cl(1);
  fit.residual_variance_quadratic = (y - quad * cq).squaredNorm() / m;
  fit.residual_variance_linear = (y - lin * cl).squaredNorm() / m;
  fit.log_variance = (y.array() - y.mean()).square().sum() / m;
  fit.r_squared = fit.log_variance > 0.0
                      ? 1.0 - fit.residual_variance_linear / fit.log_variance
                      : 1.0;
  return fit;
}

double resolution_monitor(const SpectralField& rho_hat) {
  const Grid& g = rho_hat.grid();
  const int n = g.n();
  double total = 0.0, tail = 0.0;
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      if (a == 0 && b == 0) continue;
      const double e = std::norm(rho_hat.coeffs()(a, b));
      total += e;
      if (4 * std::max(std::abs(g.mode(a)), std::abs(g.mode(b))) > n) tail += e;
    }
  return total > 0.0 ? tail / total : 0.0;
}

namespace {
double gradient_l2(const PhysicalField& v) {
  const SpectralField vh = forward_transform(v);
  return std::sqrt(parseval_sum(derivative(vh, Axis::x1)) +
                   parseval_sum(derivative(vh, Axis::x2)));
}
}  // namespace

double inequality_probe_nash(const PhysicalField& v) {
  const double l1 = lp_norm(v, 1.0);
  if (l1 == 0.0) throw PreconditionError("inequality_probe_nash: zero field");
  return lp_norm(v, 2.0) / (std::sqrt(l1 * gradient_l2(v)) + l1);
}

double inequality_probe_gn(const PhysicalField& v, double p) {
  if (!(p >= 2.0)) throw PreconditionError("inequality_probe_gn: p must be >= 2");
  const double l2v = lp_norm(v, 2.0);
  if (l2v == 0.0) throw PreconditionError("inequality_probe_gn: zero field");
  const double denom =
      std::sqrt(p) * std::pow(l2v, 2.0 / p) * std::pow(gradient_l2(v), 1.0 - 2.0 / p) + l2v;
  return lp_norm(v, p) / denom;
}

double zeta_equation_residual(const SimState& before, const SimState& at,
                              const SimState& after) {
  const std::array<double, 3> t{before.t, at.t, after.t};
  const SpectralField z0 = zeta(before), z1 = zeta(at), z2 = zeta(after);
  const double h0 = t[1] - t[0], h1 = t[2] - t[1], s = h0 + h1;
  if (!(h0 > 0.0 && h1 > 0.0))
    throw PreconditionError("zeta_equation_residual: times must be increasing");
  const SpectralField dzdt =
      (-h1 / (h0 * s)) * z0 + ((h1 - h0) / (h0 * h1)) * z1 + (h0 / (h1 * s)) * z2;

  const Velocity u = velocity(at);
  const PhysicalField u1 = inverse_transform(u.u1);
  const PhysicalField u2 = inverse_transform(u.u2);
  SpectralField laplacian = z1;
  laplacian.coeffs() *= -at.grid().kappa_squared();
  const SpectralField transport =
      dealias(forward_transform(u1 * inverse_transform(derivative(z1, Axis::x1)) +
                                u2 * inverse_transform(derivative(z1, Axis::x2))));
  const SpectralField commutator =
      forward_transform(commutator_R_advection(u.u1, u.u2, at.rho_hat));
  const SpectralField rhs = laplacian - transport + commutator - apply_N(at.rho_hat);
  return l2(dzdt - rhs) / std::max(l2(rhs), kTiny);
}

std::vector<double> gronwall_ratios(std::span<const SimState> series) {
  std::vector<double> out;
  auto grad_rho_sq = [](const SimState& s) {
    return parseval_sum(derivative(s.rho_hat, Axis::x1)) +
           parseval_sum(derivative(s.rho_hat, Axis::x2));
  };
  auto grad_u_inf = [](const SimState& s) {
    const Velocity u = velocity(s);
    Eigen::ArrayXXd sum = Eigen::ArrayXXd::Zero(s.grid().n(), s.grid().n());
    for (const SpectralField* c : {&u.u1, &u.u2})
      for (Axis a : {Axis::x1, Axis::x2})
        sum += inverse_transform(derivative(*c, a)).samples().square();
    return sum.sqrt().maxCoeff();
  };
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    const double g0 = grad_rho_sq(series[i]), g1 = grad_rho_sq(series[i + 1]);
    const double dt = series[i + 1].t - series[i].t;
    const double rate = (std::log(g1) - std::log(g0)) / dt;
    const double strain = 0.5 * (grad_u_inf(series[i]) + grad_u_inf(series[i + 1]));
    out.push_back(strain > kTiny ? rate / strain : 0.0);
  }
  return out;
}

std::vector<double> grad_omega_profile(const SimState& state, std::span<const double> p_list) {
  const PhysicalField w1 = inverse_transform(derivative(state.omega_hat, Axis::x1));
  const PhysicalField w2 = inverse_transform(derivative(state.omega_hat, Axis::x2));
  std::vector<double> out;
  for (double p : p_list) out.push_back(std::pow(p, -1.5) * lp_norm(w1, w2, p));
  return out;
}

DiagnosticsRecord make_record(const SimState& state, std::span<const double> p_list,
                              double dt_used) {
  DiagnosticsRecord r;
  r.t = state.t;
  r.dt_used = dt_used;
  const Velocity u = velocity(state);
  r.l2_u = sobolev_norm(u.u1, u.u2, 0.0);
  r.h1_u = sobolev_norm(u.u1, u.u2, 1.0);
  r.h2_u = sobolev_norm(u.u1, u.u2, 2.0);
  r.l2_rho = l2(state.rho_hat);
  r.h1_rho = sobolev_norm(state.rho_hat, 1.0);

  const PhysicalField w = inverse_transform(state.omega_hat);
  const SpectralField z = zeta(state);
  const PhysicalField z1 = inverse_transform(derivative(z, Axis::x1));
  const PhysicalField z2 = inverse_transform(derivative(z, Axis::x2));
  for (double p : p_list) {
    r.lp_omega.push_back(lp_norm(w, p));
    r.lp_grad_zeta.push_back(lp_norm(z1, z2, p));
  }
  r.linf_omega = lp_norm(w, kInfinity);
  r.tail_fraction_rho = resolution_monitor(state.rho_hat);
  return r;
}

}  // namespace bousslab
