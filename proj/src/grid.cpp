#include "bousslab/grid.hpp"

#include "bousslab/errors.hpp"
#include "grid_tables.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace bousslab {

namespace detail {

namespace {
// The FFTW planner is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

GridTables::GridTables(int n_) : n(n_) {
  const double two_pi = 2.0 * std::numbers::pi;
  kappa1.resize(n, n);
  kappa2.resize(n, n);
  odd_kappa1.resize(n, n);
  odd_kappa2.resize(n, n);
  dealias_mask.resize(n, n);
  auto mode = [n = n](int idx) { return idx < n / 2 ? idx : idx - n; };
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) {
      const int k1 = mode(a), k2 = mode(b);
      kappa1(a, b) = two_pi * k1;
      kappa2(a, b) = two_pi * k2;
      odd_kappa1(a, b) = (a == n / 2) ? 0.0 : two_pi * k1;
      odd_kappa2(a, b) = (b == n / 2) ? 0.0 : two_pi * k2;
      const bool kept = 3 * std::abs(k1) <= n && 3 * std::abs(k2) <= n;
      dealias_mask(a, b) = kept ? 1.0 : 0.0;
    }
  }
  kappa_squared = kappa1.square() + kappa2.square();

  std::lock_guard lock(planner_mutex());
  const int half = n / 2 + 1;
  double* real = fftw_alloc_real(static_cast<size_t>(n) * n);
  fftw_complex* cplx = fftw_alloc_complex(static_cast<size_t>(n) * half);
  r2c = fftw_plan_dft_r2c_2d(n, n, real, cplx, FFTW_ESTIMATE);
  c2r = fftw_plan_dft_c2r_2d(n, n, cplx, real, FFTW_ESTIMATE);
  fftw_free(real);
  fftw_free(cplx);
}

GridTables::~GridTables() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(r2c);
  fftw_destroy_plan(c2r);
}

}  // namespace detail

namespace {

std::shared_ptr<const detail::GridTables> tables_for(int n) {
  static std::mutex cache_mutex;
  static std::map<int, std::weak_ptr<const detail::GridTables>> cache;
  std::lock_guard lock(cache_mutex);
  if (auto existing = cache[n].lock()) return existing;
  auto created = std::make_shared<const detail::GridTables>(n);
  cache[n] = created;
  return created;
}

}  // namespace

Grid::Grid(int n) : n_(n) {
  if (n < 8 || n % 2 != 0)
    throw PreconditionError("grid size must be even and >= 8, got " + std::to_string(n));
  tables_ = tables_for(n);
}

const Eigen::ArrayXXd& Grid::kappa1() const noexcept { return tables_->kappa1; }
const Eigen::ArrayXXd& Grid::kappa2() const noexcept { return tables_->kappa2; }
const Eigen::ArrayXXd& Grid::kappa_squared() const noexcept { return tables_->kappa_squared; }
const Eigen::ArrayXXd& Grid::odd_kappa1() const noexcept { return tables_->odd_kappa1; }
const Eigen::ArrayXXd& Grid::odd_kappa2() const noexcept { return tables_->odd_kappa2; }
const Eigen::ArrayXXd& Grid::dealias_mask() const noexcept { return tables_->dealias_mask; }

}  // namespace bousslab
