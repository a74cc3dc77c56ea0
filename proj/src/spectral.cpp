#include "bousslab/spectral.hpp"

#include "bousslab/errors.hpp"
#include "grid_tables.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <string>

namespace bousslab {

namespace {

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double, FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex, FftwFree>;

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b))
    throw PreconditionError("fields live on different grids (" + std::to_string(a.n()) +
                            " vs " + std::to_string(b.n()) + ")");
}

// Relative tolerance for the realness check in inverse_transform.
constexpr double kHermitianTolerance = 1e-9;

}  // namespace

// ---------------------------------------------------------------------------
// PhysicalField

PhysicalField::PhysicalField(const Grid& grid)
    : grid_(grid), samples_(Eigen::ArrayXXd::Zero(grid.n(), grid.n())) {}

PhysicalField::PhysicalField(const Grid& grid, Eigen::ArrayXXd samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.rows() != grid.n() || samples_.cols() != grid.n())
    throw PreconditionError("sample array does not match grid size");
}

PhysicalField PhysicalField::from_function(const Grid& grid,
                                           const std::function<double(double, double)>& f) {
  PhysicalField out(grid);
  const int n = grid.n();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) out.samples_(i, j) = f(double(i) / n, double(j) / n);
  return out;
}

PhysicalField PhysicalField::constant(const Grid& grid, double value) {
  return PhysicalField(grid, Eigen::ArrayXXd::Constant(grid.n(), grid.n(), value));
}

PhysicalField& PhysicalField::operator+=(const PhysicalField& other) {
  require_same_grid(grid_, other.grid_);
  samples_ += other.samples_;
  return *this;
}

PhysicalField& PhysicalField::operator-=(const PhysicalField& other) {
  require_same_grid(grid_, other.grid_);
  samples_ -= other.samples_;
  return *this;
}

PhysicalField& PhysicalField::operator*=(double s) {
  samples_ *= s;
  return *this;
}

PhysicalField operator+(PhysicalField a, const PhysicalField& b) { return a += b; }
PhysicalField operator-(PhysicalField a, const PhysicalField& b) { return a -= b; }
PhysicalField operator*(double s, PhysicalField a) { return a *= s; }

PhysicalField operator*(PhysicalField a, const PhysicalField& b) {
  require_same_grid(a.grid(), b.grid());
  a.samples() *= b.samples();
  return a;
}

// ---------------------------------------------------------------------------
// SpectralField

SpectralField::SpectralField(const Grid& grid)
    : grid_(grid), coeffs_(Eigen::ArrayXXcd::Zero(grid.n(), grid.n())) {}

SpectralField::SpectralField(const Grid& grid, Eigen::ArrayXXcd coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() != grid.n() || coeffs_.cols() != grid.n())
    throw PreconditionError("coefficient array does not match grid size");
}

Complex SpectralField::coeff(int k1, int k2) const {
  return coeffs_(grid_.index(k1), grid_.index(k2));
}

void SpectralField::set_coeff(int k1, int k2, Complex value) {
  coeffs_(grid_.index(k1), grid_.index(k2)) = value;
}

void SpectralField::set_mode_pair(int k1, int k2, Complex value) {
  const int n = grid_.n();
  set_coeff(k1, k2, value);
  // -(-n/2) aliases back onto -n/2.
  const int m1 = (k1 == -n / 2) ? k1 : -k1;
  const int m2 = (k2 == -n / 2) ? k2 : -k2;
  if (m1 == k1 && m2 == k2)
    set_coeff(k1, k2, Complex(value.real(), 0.0));
  else
    set_coeff(m1, m2, std::conj(value));
}

double SpectralField::hermitian_defect() const {
  const int n = grid_.n();
  double defect = 0.0;
  for (int b = 0; b < n; ++b) {
    const int nb = (n - b) % n;
    for (int a = 0; a < n; ++a) {
      const int na = (n - a) % n;
      defect = std::max(defect, std::norm(coeffs_(a, b) - std::conj(coeffs_(na, nb))));
    }
  }
  return std::sqrt(defect);
}

double SpectralField::max_abs() const { return std::sqrt(coeffs_.abs2().maxCoeff()); }

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  coeffs_ += other.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  coeffs_ -= other.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  coeffs_ *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator-(SpectralField a) { return a *= -1.0; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

// ---------------------------------------------------------------------------
// Transforms

SpectralField forward_transform(const PhysicalField& field) {
  const Grid& grid = field.grid();
  const int n = grid.n();
  const int half = n / 2 + 1;
  RealBuffer in(fftw_alloc_real(static_cast<size_t>(n) * n));
  ComplexBuffer out(fftw_alloc_complex(static_cast<size_t>(n) * half));
  // Column-major (i, j) storage is FFTW's row-major [j][i]: i is the last,
  // halved dimension, i.e. k1.
  std::copy_n(field.samples().data(), static_cast<size_t>(n) * n, in.get());
  fftw_execute_dft_r2c(grid.tables().r2c, in.get(), out.get());

  SpectralField result(grid);
  auto& c = result.coeffs();
  const double scale = 1.0 / (double(n) * n);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < half; ++a) {
      const fftw_complex& v = out.get()[static_cast<size_t>(b) * half + a];
      c(a, b) = Complex(v[0], v[1]) * scale;
    }
  for (int b = 0; b < n; ++b)
    for (int a = half; a < n; ++a) c(a, b) = std::conj(c(n - a, (n - b) % n));
  return result;
}

PhysicalField inverse_transform(const SpectralField& field) {
  const Grid& grid = field.grid();
  const int n = grid.n();
  const int half = n / 2 + 1;
  const double defect = field.hermitian_defect();
  if (!(defect <= kHermitianTolerance * std::max(field.max_abs(), 1e-300)))
    throw MalformedFieldError("spectral field is not Hermitian-symmetric (defect " +
                              std::to_string(defect) + ")");

  ComplexBuffer in(fftw_alloc_complex(static_cast<size_t>(n) * half));
  RealBuffer out(fftw_alloc_real(static_cast<size_t>(n) * n));
  const auto& c = field.coeffs();
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < half; ++a) {
      fftw_complex& v = in.get()[static_cast<size_t>(b) * half + a];
      v[0] = c(a, b).real();
      v[1] = c(a, b).imag();
    }
  fftw_execute_dft_c2r(grid.tables().c2r, in.get(), out.get());

  Eigen::ArrayXXd samples(n, n);
  std::copy_n(out.get(), static_cast<size_t>(n) * n, samples.data());
  return PhysicalField(grid, std::move(samples));
}

SpectralField derivative(const SpectralField& field, Axis axis) {
  const Grid& grid = field.grid();
  const auto& k = axis == Axis::x1 ? grid.odd_kappa1() : grid.odd_kappa2();
  // i*k*(x + iy) = -k*y + i*k*x, without general complex products.
  SpectralField out(grid);
  out.coeffs().real() = -k * field.coeffs().imag();
  out.coeffs().imag() = k * field.coeffs().real();
  return out;
}

SpectralField dealias(const SpectralField& field) {
  return SpectralField(field.grid(),
                       field.coeffs() * field.grid().dealias_mask());
}

SpectralField project_mean_zero(const SpectralField& field) {
  SpectralField out = field;
  out.coeffs()(0, 0) = 0.0;
  return out;
}

SpectralField dealiased_product(const PhysicalField& a, const PhysicalField& b) {
  return dealias(forward_transform(a * b));
}

SpectralField random_bandlimited(const Grid& grid, int kmax, std::uint64_t seed) {
  const int n = grid.n();
  if (kmax < 1 || 2 * kmax >= n)
    throw PreconditionError("random_bandlimited: kmax must be in [1, n/2)");
  std::mt19937_64 rng(seed);
  // Fixed bit-to-double conversion; std::uniform_real_distribution is not
  // pinned across standard libraries.
  auto uniform = [&rng] { return double(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };

  SpectralField out(grid);
  // Visit the half-plane k2 > 0, plus k2 == 0 with k1 > 0, in a fixed order.
  for (int k2 = 0; k2 <= kmax; ++k2) {
    for (int k1 = -kmax; k1 <= kmax; ++k1) {
      if (k2 == 0 && k1 <= 0) continue;
      const double re = uniform(), im = uniform();
      const double decay = 1.0 / (1.0 + double(k1) * k1 + double(k2) * k2);
      out.set_mode_pair(k1, k2, Complex(re, im) * decay);
    }
  }
  return out;
}

SpectralField resample(const SpectralField& field, const Grid& target) {
  const int n_src = field.grid().n();
  const int n_dst = target.n();
  const int limit = std::min(n_src, n_dst) / 2;
  SpectralField out(target);
  // Nyquist modes are dropped; they have no consistent image on the other grid.
  for (int k2 = -limit + 1; k2 < limit; ++k2)
    for (int k1 = -limit + 1; k1 < limit; ++k1) out.set_coeff(k1, k2, field.coeff(k1, k2));
  return out;
}

double parseval_sum(const SpectralField& field) { return field.coeffs().abs2().sum(); }

}  // namespace bousslab
