#include "bousslab/harness.hpp"

#include "bousslab/diagnostics.hpp"
#include "bousslab/errors.hpp"
#include "bousslab/multipliers.hpp"
#include "bousslab/oracle.hpp"
#include "bousslab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <random>

namespace bousslab {

namespace {

constexpr double kPi = std::numbers::pi;

class Report {
 public:
  explicit Report(std::ostream& out) : out_(out) {}

  // Passes when value < limit (or value > limit with `above`).
  void check(const std::string& name, double value, double limit, bool above = false) {
    const bool pass = above ? value > limit : value < limit;
    out_ << (pass ? "PASS " : "FAIL ") << name << " value=" << format_scientific(value)
         << (above ? " need >" : " need <") << format_scientific(limit) << '\n';
    failures_ += pass ? 0 : 1;
  }
  void flag(const std::string& name, bool pass, const std::string& detail) {
    out_ << (pass ? "PASS " : "FAIL ") << name << ' ' << detail << '\n';
    failures_ += pass ? 0 : 1;
  }
  int failures() const { return failures_; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

PhysicalField sample(const Grid& g, const std::function<double(double, double)>& f) {
  return PhysicalField::from_function(g, f);
}

double relative_l2(const SpectralField& a, const SpectralField& b) {
  return std::sqrt(parseval_sum(a - b) / std::max(parseval_sum(b), 1e-300));
}

void operators_suite(Report& r) {
  const Grid g(64);
  const Velocity u = biot_savart(random_bandlimited(g, 8, 101));
  const SpectralField rho = random_bandlimited(g, 8, 202);
  r.check("operators.commutator_identity", commutator_identity_residual(u.u1, u.u2, rho), 1e-10);
  r.check("operators.commutator_T_helmholtz",
          commutator_T_identity_residual(MultiplierSymbol::helmholtz_power(-2.0), u.u1, u.u2,
                                         rho),
          1e-10);
  const SpectralField bad1 = forward_transform(
      sample(g, [](double x1, double) { return std::sin(2.0 * kPi * x1); }));
  r.check("operators.negative_control", commutator_identity_residual(bad1, SpectralField(g), rho),
          1e-2, true);

  SpectralField unit(g);
  unit.set_coeff(1, 0, 1.0);
  const Complex n10 = apply_N(unit).coeff(1, 0);
  const Complex expected(0.0, -2.0 * kPi / (1.0 + 4.0 * kPi * kPi));
  r.check("operators.N_symbol_unit_mode", std::abs(n10 - expected), 1e-15);

  const SpectralField omega = random_bandlimited(g, 10, 303);
  const Velocity v = biot_savart(omega);
  const double w_inf = lp_norm(inverse_transform(omega), kInfinity);
  const PhysicalField div =
      inverse_transform(derivative(v.u1, Axis::x1) + derivative(v.u2, Axis::x2));
  r.check("operators.biot_savart_divergence", lp_norm(div, kInfinity) / w_inf, 1e-12);
  r.check("operators.biot_savart_curl",
          relative_l2(derivative(v.u2, Axis::x1) - derivative(v.u1, Axis::x2), omega), 1e-12);

  double worst = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const SpectralField f = random_bandlimited(g, 20, 400 + s);
    worst = std::max(worst, std::sqrt(parseval_sum(apply_R(f)) / parseval_sum(f)));
  }
  r.check("operators.R_bounded_by_half", worst, 0.5 + 1e-15);

  // Order -1: log-log slope of |N e_k| against |k| along k = (m, 0).
  const double m0 = 16.0, m1 = 21.0;
  auto n_mag = [&](int m) {
    SpectralField e(g);
    e.set_mode_pair(m, 0, 1.0);
    return std::abs(apply_N(e).coeff(m, 0));
  };
  const double slope = std::log(n_mag(21) / n_mag(16)) / std::log(m1 / m0);
  r.check("operators.N_order_minus_one", std::abs(slope + 1.0), 0.05);
}

void budgets_suite(Report& r) {
  const ForcingSpec bous = ForcingSpec::boussinesq();
  {
    // Taylor-Green: energy balance on a record cadence of dt = 1e-5.
    const Grid g(64);
    std::vector<SimState> xs{initial_data(Preset::taylor_green, g, 0)};
    for (int i = 0; i < 4; ++i) xs.push_back(step(xs.back(), 1e-5, bous));
    double worst = 0.0;
    for (double e : energy_budget_residual(xs, bous)) worst = std::max(worst, std::abs(e));
    r.check("budgets.taylor_green_energy", worst, 1e-6);
  }
  {
    // Single decaying mode, L^4 vorticity balance from the closed form.
    const Grid g(32);
    SimState s(g);
    s.omega_hat = forward_transform(
        sample(g, [](double x1, double) { return std::sin(2.0 * kPi * x1); }));
    std::vector<SimState> xs;
    for (double t : {0.01 - 1e-7, 0.01, 0.01 + 1e-7}) {
      SimState x = s;
      x.t = t;
      x.omega_hat *= std::exp(-4.0 * kPi * kPi * t);
      xs.push_back(x);
    }
    r.check("budgets.single_mode_enstrophy",
            std::abs(enstrophy_budget_residual(xs, ForcingSpec::none(), 2).at(0)), 1e-8);
  }
  {
    // Modified-vorticity equation: second-order decay of the residual.
    const Grid g(64);
    InitialParams p;
    p.band = 4;
    std::vector<SimState> xs{initial_data(Preset::random_bandlimited, g, 11, p)};
    for (int i = 0; i < 40; ++i) xs.push_back(step(xs.back(), 1e-4, bous));
    const double coarse = zeta_equation_residual(xs[12], xs[20], xs[28]);
    const double fine = zeta_equation_residual(xs[16], xs[20], xs[24]);
    r.check("budgets.zeta_equation_order", std::log2(coarse / fine), 1.9, true);
  }
  {
    // Unforced Navier-Stokes: kinetic energy never increases.
    const Grid g(32);
    InitialParams p;
    p.band = 5;
    SimState s = initial_data(Preset::random_bandlimited, g, 5, p);
    s.rho_hat = SpectralField(g);
    const ForcingSpec none = ForcingSpec::none();
    double worst = -1.0;
    double e0 = budget_terms(s, none, 1).energy;
    for (int i = 0; i < 50; ++i) {
      s = step(s, 2e-3, none);
      const double e1 = budget_terms(s, none, 1).energy;
      worst = std::max(worst, e1 - e0);
      e0 = e1;
    }
    r.check("budgets.unforced_energy_increase", worst, 1e-12);
  }
}

void recursion_suite(Report& r) {
  std::mt19937_64 rng(20240601);
  auto uniform = [&rng](double lo, double hi) {
    return lo + (hi - lo) * (double(rng() >> 11) * 0x1.0p-53);
  };
  int dominance_failures = 0, bound_failures = 0;
  double closed_gap = 0.0;
  for (int i = 0; i < 200; ++i) {
    oracle::RecursionParams p;
    p.C0 = uniform(1.0, 10.0);
    p.C1 = uniform(p.C0, 100.0);
    p.M = std::exp(uniform(0.0, std::log(1e6)));
    p.lambda = uniform(0.0, 3.0);
    dominance_failures += oracle::dominance_check(p, 30).holds ? 0 : 1;
    bound_failures += oracle::uniform_bound_extract(p, 30).holds ? 0 : 1;
    const oracle::LogSequence rs = oracle::r_sequence(p, 30);
    for (int k = 1; k <= 30; ++k)
      closed_gap = std::max(closed_gap, std::abs(rs.at(k) - oracle::r_closed_form(p, k)));
  }
  r.flag("recursion.dominance", dominance_failures == 0,
         "failures=" + std::to_string(dominance_failures) + "/200");
  r.flag("recursion.uniform_bound", bound_failures == 0,
         "failures=" + std::to_string(bound_failures) + "/200");
  r.check("recursion.closed_form_log_gap", closed_gap, 1e-9);
  r.check("recursion.beta_limit", std::abs(oracle::beta_limit(1e-10) - 0.28878), 1e-5);
  r.flag("recursion.beta_partials",
         oracle::beta_partial(1) == 0.5 && oracle::beta_partial(2) == 0.375 &&
             oracle::beta_partial(3) == 21.0 / 64.0,
         "k=1,2,3 -> 1/2, 3/8, 21/64");
  double riccati = 0.0;
  for (double ratio : {2.0, 10.0, 1e3, 1e6}) {
    const double exact = oracle::riccati_settling_exact(1.0, ratio);
    const double numeric = oracle::riccati_settling(1.0, ratio);
    riccati = std::max(riccati, exact > 0.0 ? std::abs(numeric / exact - 1.0)
                                            : std::abs(numeric - exact));
  }
  r.check("recursion.riccati_settling", riccati, 1e-6);
  r.check("recursion.time_shift_sum",
          std::abs(oracle::time_shift_sum(20, 1.0) - (1.0 - std::ldexp(1.0, -20))), 1e-15);
}

void nash_lemma_suite(Report& r) {
  // Inequality probes on seeded random fields, n and 2n.
  double nash[2] = {0.0, 0.0}, gn[2] = {0.0, 0.0};
  for (int level = 0; level < 2; ++level) {
    const Grid g(32 << level);
    for (std::uint64_t s = 0; s < 200; ++s) {
      const PhysicalField v = inverse_transform(random_bandlimited(g, 5, 7000 + s));
      nash[level] = std::max(nash[level], inequality_probe_nash(v));
      for (double p : {4.0, 8.0, 16.0}) gn[level] = std::max(gn[level], inequality_probe_gn(v, p));
    }
  }
  r.check("nash-lemma.nash_refinement_change", std::abs(nash[1] / nash[0] - 1.0), 0.05);
  r.check("nash-lemma.gn_refinement_change", std::abs(gn[1] / gn[0] - 1.0), 0.05);

  // Forced Navier-Stokes: the vorticity settles onto a plateau.
  const Grid g(32);
  const ForcingSpec f = ForcingSpec::curl_forced(1.0, 0.5);
  SimState s(g);
  std::vector<double> t, w;
  for (int i = 0; i < 400; ++i) {
    s = step(s, 1e-2, f);
    if (s.t >= 2.0 - 1e-9) {
      t.push_back(s.t);
      w.push_back(lp_norm(inverse_transform(s.omega_hat), kInfinity));
    }
  }
  const GrowthFit fit = growth_fit(t, w, 2.0, 4.0 + 1e-9);
  r.check("nash-lemma.forced_plateau_slope", std::abs(fit.linear_only_slope), 0.01);
}

}  // namespace

int cmd_verify(const std::string& suite, std::ostream& log) {
  static const std::map<std::string, std::function<void(Report&)>> suites{
      {"operators", operators_suite},
      {"budgets", budgets_suite},
      {"recursion", recursion_suite},
      {"nash-lemma", nash_lemma_suite},
  };
  Report report(log);
  if (suite == "all") {
    for (const auto& [name, run] : suites) run(report);
  } else {
    const auto it = suites.find(suite);
    if (it == suites.end()) {
      log << "unknown suite '" << suite << "'; expected operators, budgets, recursion, "
          << "nash-lemma or all\n";
      return exit_code::usage;
    }
    it->second(report);
  }
  log << (report.failures() == 0 ? "all checks passed"
                                 : std::to_string(report.failures()) + " check(s) failed")
      << '\n';
  return report.failures() == 0 ? exit_code::ok : exit_code::internal;
}

}  // namespace bousslab
