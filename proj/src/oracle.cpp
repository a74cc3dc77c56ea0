#include "bousslab/oracle.hpp"

#include "bousslab/errors.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <string>

namespace bousslab::oracle {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kDominanceSlack = 1e-12;

void require_kmax(int kmax) {
  if (kmax < 1) throw PreconditionError("kmax must be >= 1, got " + std::to_string(kmax));
}

double arccoth(double x) { return 0.5 * std::log((x + 1.0) / (x - 1.0)); }

// One Dormand-Prince 5(4) step for y' = f(y); returns the 5th-order value and
// writes the embedded error estimate.
template <class F>
double dopri_step(const F& f, double y, double h, double& error) {
  const double k1 = f(y);
  const double k2 = f(y + h * (1.0 / 5.0) * k1);
  const double k3 = f(y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
  const double k4 = f(y + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3));
  const double k5 = f(y + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 +
                               64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4));
  const double k6 = f(y + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 + 46732.0 / 5247.0 * k3 +
                               49.0 / 176.0 * k4 - 5103.0 / 18656.0 * k5));
  const double y5 = y + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 -
                             2187.0 / 6784.0 * k5 + 11.0 / 84.0 * k6);
  const double k7 = f(y5);
  const double y4 = y + h * (5179.0 / 57600.0 * k1 + 7571.0 / 16695.0 * k3 +
                             393.0 / 640.0 * k4 - 92097.0 / 339200.0 * k5 +
                             187.0 / 2100.0 * k6 + 1.0 / 40.0 * k7);
  error = std::abs(y5 - y4);
  return y5;
}

}  // namespace

void RecursionParams::validate() const {
  if (!(std::isfinite(C0) && std::isfinite(C1) && std::isfinite(M) && std::isfinite(lambda)))
    throw PreconditionError("recursion parameters must be finite");
  if (!(C0 >= 1.0)) throw PreconditionError("C0 must be >= 1");
  if (!(C1 >= C0)) throw PreconditionError("C1 must be >= C0");
  if (!(M >= 1.0)) throw PreconditionError("M must be >= 1");
  if (!(lambda >= 0.0)) throw PreconditionError("lambda must be >= 0");
}

double LogSequence::at(int k) const {
  if (k < 1 || k > size())
    throw PreconditionError("LogSequence index " + std::to_string(k) + " out of range");
  return values[static_cast<std::size_t>(k - 1)];
}

LogSequence m_sequence(const RecursionParams& params, int kmax) {
  require_kmax(kmax);
  params.validate();
  const double log_c0 = std::log(params.C0);
  const double log_m = std::log(params.M);
  LogSequence out;
  out.values.reserve(static_cast<std::size_t>(kmax));
  out.values.push_back(log_c0 + 2.0 * log_m);
  for (int k = 1; k < kmax; ++k) {
    const double log_p = k * kLn2;
    const double p = std::ldexp(1.0, k);
    const double w = 2.0 * p / (p + 1.0);
    const double log_mk = out.values.back();
    const double branch1 = log_p + 2.0 * log_mk;
    const double branch2 = (1.0 + params.lambda) * w * log_p + w * log_mk + w * log_m;
    out.values.push_back(log_c0 + std::max(branch1, branch2));
  }
  return out;
}

LogSequence r_sequence(const RecursionParams& params, int kmax) {
  require_kmax(kmax);
  params.validate();
  const double log_c1 = std::log(params.C1);
  LogSequence out;
  out.values.reserve(static_cast<std::size_t>(kmax));
  out.values.push_back(log_c1 + params.mu() * kLn2 + 2.0 * std::log(params.M));
  for (int k = 1; k < kmax; ++k)
    out.values.push_back(log_c1 + params.mu() * k * kLn2 + 2.0 * out.values.back());
  return out;
}

double r_closed_form(const RecursionParams& params, int k) {
  require_kmax(k);
  params.validate();
  const double two_k = std::ldexp(1.0, k);
  return (two_k - 1.0) * (params.mu() * kLn2 + std::log(params.C1)) +
         two_k * std::log(params.M);
}

DominanceResult dominance_check(const RecursionParams& params, int kmax) {
  const LogSequence m = m_sequence(params, kmax);
  const LogSequence r = r_sequence(params, kmax);
  DominanceResult result;
  result.worst_gap = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= kmax; ++k) {
    const double gap = m.at(k) - r.at(k);
    result.worst_gap = std::max(result.worst_gap, gap);
    if (gap > kDominanceSlack && result.holds) {
      result.holds = false;
      result.first_failure = k;
    }
  }
  return result;
}

UniformBound uniform_bound_extract(const RecursionParams& params, int kmax) {
  const LogSequence m = m_sequence(params, kmax);
  UniformBound out;
  out.max_scaled_log = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= kmax; ++k) {
    const double scaled = m.at(k) / std::ldexp(1.0, k);
    if (scaled > out.max_scaled_log) {
      out.max_scaled_log = scaled;
      out.argmax = k;
    }
  }
  out.log_bound = params.mu() * kLn2 + std::log(params.C1) + std::log(params.M);
  out.holds = out.max_scaled_log <= out.log_bound + kDominanceSlack;
  return out;
}

double beta_partial(int k) {
  if (k < 1) throw PreconditionError("beta_partial: k must be >= 1");
  double product = 1.0;
  for (int j = 1; j <= k; ++j) product *= 1.0 - std::ldexp(1.0, -j);
  return product;
}

double beta_limit(double tol) {
  if (!(tol > 0.0)) throw PreconditionError("beta_limit: tol must be positive");
  double product = 0.5;
  for (int j = 2; j < 1100; ++j) {
    const double next = product * (1.0 - std::ldexp(1.0, -j));
    const double change = product - next;
    product = next;
    if (change < tol) break;
  }
  return product;
}

double riccati_settling_exact(double a, double y0) {
  if (!(a > 0.0)) throw PreconditionError("riccati: a must be positive");
  if (!(y0 >= 0.0)) throw PreconditionError("riccati: y0 must be >= 0");
  if (y0 <= 2.0 * a) return 0.0;
  return arccoth(2.0) - arccoth(y0 / a);
}

double riccati_settling(double a, double y0) {
  if (!(a > 0.0)) throw PreconditionError("riccati: a must be positive");
  if (!(y0 >= 0.0)) throw PreconditionError("riccati: y0 must be >= 0");
  const double target = 2.0 * a;
  if (y0 <= target) return 0.0;

  const auto f = [a](double y) { return a - y * y / a; };
  constexpr double rtol = 1e-11;
  const double atol = 1e-13 * a;
  double t = 0.0, y = y0;
  double h = 1e-3 * y / std::abs(f(y));
  for (int iter = 0; iter < 1000000; ++iter) {
    double err = 0.0;
    const double y_next = dopri_step(f, y, h, err);
    const double scale = atol + rtol * std::max(std::abs(y), std::abs(y_next));
    const double ratio = err / scale;
    if (ratio <= 1.0) {
      if (y_next <= target) {
        // Locate the crossing inside [t, t + h] by bisection on sub-steps.
        double lo = 0.0, hi = h, e = 0.0;
        for (int b = 0; b < 200 && hi - lo > 1e-16 * std::max(t, h); ++b) {
          const double mid = 0.5 * (lo + hi);
          if (dopri_step(f, y, mid, e) <= target)
            hi = mid;
          else
            lo = mid;
        }
        return t + 0.5 * (lo + hi);
      }
      t += h;
      y = y_next;
    }
    const double factor = ratio > 0.0 ? 0.9 * std::pow(ratio, -0.2) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
  }
  throw PreconditionError("riccati_settling: step budget exhausted");
}

double time_shift_sum(int kmax, double C) {
  require_kmax(kmax);
  if (!(C > 0.0)) throw PreconditionError("time_shift_sum: C must be positive");
  double sum = 0.0;
  for (int k = 1; k <= kmax; ++k) sum += C * std::ldexp(1.0, -k);
  return sum;
}

}  // namespace bousslab::oracle
