#pragma once

#include "bousslab/grid.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <functional>

namespace bousslab {

using Complex = std::complex<double>;

enum class Axis { x1 = 1, x2 = 2 };

/// Real samples of a 1-periodic field.
class PhysicalField {
 public:
  explicit PhysicalField(const Grid& grid);
  PhysicalField(const Grid& grid, Eigen::ArrayXXd samples);

  /// Samples f(i/n, j/n) of an analytic function.
  static PhysicalField from_function(const Grid& grid,
                                     const std::function<double(double, double)>& f);
  static PhysicalField constant(const Grid& grid, double value);

  const Grid& grid() const noexcept { return grid_; }
  const Eigen::ArrayXXd& samples() const noexcept { return samples_; }
  Eigen::ArrayXXd& samples() noexcept { return samples_; }
  double operator()(int i, int j) const { return samples_(i, j); }

  double mean() const { return samples_.mean(); }
  bool all_finite() const { return samples_.allFinite(); }

  PhysicalField& operator+=(const PhysicalField& other);
  PhysicalField& operator-=(const PhysicalField& other);
  PhysicalField& operator*=(double s);

 private:
  Grid grid_;
  Eigen::ArrayXXd samples_;
};

PhysicalField operator+(PhysicalField a, const PhysicalField& b);
PhysicalField operator-(PhysicalField a, const PhysicalField& b);
PhysicalField operator*(PhysicalField a, const PhysicalField& b);  // pointwise
PhysicalField operator*(double s, PhysicalField a);

/// Fourier coefficients of a real field, normalized so coeff(0) is the mean.
class SpectralField {
 public:
  explicit SpectralField(const Grid& grid);
  SpectralField(const Grid& grid, Eigen::ArrayXXcd coeffs);

  const Grid& grid() const noexcept { return grid_; }
  const Eigen::ArrayXXcd& coeffs() const noexcept { return coeffs_; }
  Eigen::ArrayXXcd& coeffs() noexcept { return coeffs_; }

  /// Coefficient of integer mode (k1, k2), each in [-n/2, n/2).
  Complex coeff(int k1, int k2) const;
  void set_coeff(int k1, int k2, Complex value);
  /// Sets (k1,k2) and its conjugate partner (-k1,-k2).
  void set_mode_pair(int k1, int k2, Complex value);

  Complex mean() const { return coeffs_(0, 0); }
  /// max_k |c(k) - conj(c(-k))|.
  double hermitian_defect() const;
  /// Largest coefficient modulus.
  double max_abs() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);

 private:
  Grid grid_;
  Eigen::ArrayXXcd coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a);
SpectralField operator*(double s, SpectralField a);

PhysicalField inverse_transform(const SpectralField& field);
SpectralField forward_transform(const PhysicalField& field);

/// Multiplies by i*kappa along `axis`; the Nyquist coefficient of that axis
/// is dropped so the result stays real.
SpectralField derivative(const SpectralField& field, Axis axis);

/// 2/3-rule truncation: zeroes modes with |k1| > n/3 or |k2| > n/3.
SpectralField dealias(const SpectralField& field);

SpectralField project_mean_zero(const SpectralField& field);

/// Pointwise product of two physical fields, transformed and dealiased.
SpectralField dealiased_product(const PhysicalField& a, const PhysicalField& b);

/// Real, mean-zero field with random coefficients on modes max(|k1|,|k2|) <= kmax.
///
/// Coefficient moduli decay like 1/(1+|k|^2) so the field is smooth. The
/// result depends only on (grid.n(), kmax, seed); the same coefficients are
/// produced on any grid large enough to carry them.
SpectralField random_bandlimited(const Grid& grid, int kmax, std::uint64_t seed);

/// Zero-padding or truncation of a spectrum onto another grid.
SpectralField resample(const SpectralField& field, const Grid& target);

/// Sum of |coeff|^2 (mean of f^2 for a real field).
double parseval_sum(const SpectralField& field);

}  // namespace bousslab
