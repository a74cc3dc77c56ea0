#pragma once

#include <Eigen/Core>

#include <memory>

namespace bousslab {

namespace detail {
struct GridTables;
}

/// Uniform n x n sampling of the unit torus.
///
/// Sample (i, j) sits at (i/n, j/n); i runs along x1 and is the fast
/// (column-major row) index. Spectral arrays use FFT ordering: index a maps
/// to integer mode a for a < n/2 and a - n otherwise, so index n/2 is the
/// Nyquist mode -n/2. Physical wavenumbers carry the 2*pi explicitly.
///
/// Wavenumber tables and FFT plans are shared between copies, so a Grid is
/// cheap to pass by value.
class Grid {
 public:
  explicit Grid(int n);

  int n() const noexcept { return n_; }
  static constexpr double period() noexcept { return 1.0; }
  double dx() const noexcept { return period() / n_; }

  /// Integer mode for a spectral array index.
  int mode(int index) const noexcept { return index < n_ / 2 ? index : index - n_; }
  /// Array index for an integer mode in [-n/2, n/2).
  int index(int mode) const noexcept { return mode >= 0 ? mode : mode + n_; }

  /// kappa_1 = 2*pi*k1 and kappa_2 = 2*pi*k2, indexed like spectral arrays.
  const Eigen::ArrayXXd& kappa1() const noexcept;
  const Eigen::ArrayXXd& kappa2() const noexcept;
  /// |kappa|^2.
  const Eigen::ArrayXXd& kappa_squared() const noexcept;
  /// Odd-symbol wavenumbers: kappa with the Nyquist index zeroed.
  const Eigen::ArrayXXd& odd_kappa1() const noexcept;
  const Eigen::ArrayXXd& odd_kappa2() const noexcept;
  /// 1 on modes kept by the 2/3 rule, 0 elsewhere.
  const Eigen::ArrayXXd& dealias_mask() const noexcept;

  const detail::GridTables& tables() const noexcept { return *tables_; }

  friend bool operator==(const Grid& a, const Grid& b) noexcept { return a.n_ == b.n_; }

 private:
  int n_;
  std::shared_ptr<const detail::GridTables> tables_;
};

}  // namespace bousslab
