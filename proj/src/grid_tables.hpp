#pragma once

#include <Eigen/Core>
#include <fftw3.h>

namespace bousslab::detail {

// Per-resolution constants shared by every Grid of the same size.
struct GridTables {
  explicit GridTables(int n);
  ~GridTables();
  GridTables(const GridTables&) = delete;
  GridTables& operator=(const GridTables&) = delete;

  int n;
  Eigen::ArrayXXd kappa1, kappa2, kappa_squared;
  Eigen::ArrayXXd odd_kappa1, odd_kappa2;
  Eigen::ArrayXXd dealias_mask;

  // Real-to-half-complex plans on an n x n array, FFTW_ESTIMATE so that the
  // selected algorithm, and therefore the rounding, is reproducible.
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

}  // namespace bousslab::detail
