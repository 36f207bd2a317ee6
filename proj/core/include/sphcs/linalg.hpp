#pragma once

#include <complex>

#include <Eigen/Dense>

namespace sphcs {

using Complex = std::complex<double>;

/// Dense complex matrix stored row-major (one row per sample).
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;

}  // namespace sphcs
