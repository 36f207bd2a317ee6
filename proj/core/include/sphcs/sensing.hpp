#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "sphcs/linalg.hpp"
#include "sphcs/spherical.hpp"

namespace sphcs {

/// Distribution of the sampling points on [0, pi] x [0, 2 pi).
enum class SamplingMeasure {
  /// dphi dtheta: phi uniform on [0, pi]; concentrates points near the poles.
  kProduct,
  /// sin(phi) dphi dtheta: uniform on the sphere surface (cos phi uniform).
  kSurface,
};

std::string_view to_string(SamplingMeasure measure) noexcept;

/// Parses "product" or "surface"; throws ParameterError otherwise.
SamplingMeasure parse_measure(std::string_view name);

/// Total mass of the measure on [0, pi] x [0, 2 pi): 2 pi^2 or 4 pi.
double measure_mass(SamplingMeasure measure) noexcept;

struct SampleSet {
  std::vector<SpherePoint> points;
  SamplingMeasure measure = SamplingMeasure::kProduct;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return points.size(); }
};

/// Draws m i.i.d. points. Point j depends only on (seed, j), so the set is
/// bit-reproducible and any prefix of a larger draw matches a smaller one.
SampleSet sample_points(std::size_t m, SamplingMeasure measure, std::uint64_t seed);

/// CSV `phi,theta` with a header row, full precision.
void write_samples_csv(std::ostream& os, const SampleSet& samples);

/// Sampling matrix Phi (m x N, Phi_{j,i} = Y_i(point_j)), the preconditioner
/// diagonal A_jj = (sin phi_j)^{1/2}, and Psi = A Phi / sqrt(m).
struct MeasurementEnsemble {
  int degree_bound = 0;
  ComplexMatrix phi_matrix;
  Eigen::VectorXd precond_diag;
  ComplexMatrix normalized;

  Eigen::Index rows() const noexcept { return phi_matrix.rows(); }
  Eigen::Index cols() const noexcept { return phi_matrix.cols(); }
};

MeasurementEnsemble build_ensemble(int degree_bound, const SampleSet& samples);

/// Factor turning Psi into the sampling matrix of {Q_ell^k} orthonormalized
/// against the product probability measure dphi dtheta / (2 pi^2), i.e.
/// E[(c Psi)^* (c Psi)] = I under product sampling. Equals pi sqrt(2).
double isometry_scale() noexcept;

/// isometry_scale() * ensemble.normalized, the matrix whose restricted
/// isometry constants are meaningful.
ComplexMatrix isometry_normalized(const MeasurementEnsemble& ensemble);

/// Max entry deviation from I of mass(measure) / m * sum_j w_j y_j y_j^*,
/// where y_j is the row of {Y_ell^k} at point j and w_j = sin(phi_j) when
/// `preconditioned`, else 1. Streams over the points; no m x N storage.
double sample_gram_deviation(int degree_bound, std::size_t m, SamplingMeasure measure,
                             bool preconditioned, std::uint64_t seed);

/// Monte Carlo check that the preconditioned product-measure system is
/// isotropic: sample_gram_deviation(D, m, product, true, seed).
double expected_gram_check(int degree_bound, std::size_t m, std::uint64_t seed);

}  // namespace sphcs
