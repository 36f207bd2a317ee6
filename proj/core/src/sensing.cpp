#include "sphcs/sensing.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "sphcs/error.hpp"
#include "sphcs/rng.hpp"

namespace sphcs {

namespace {

constexpr double kPi = std::numbers::pi;

// Largest double strictly below 2 pi; 2 pi u can round up to 2 pi itself.
double azimuth(double u) noexcept {
  const double theta = 2.0 * kPi * u;
  return theta < 2.0 * kPi ? theta : std::nextafter(2.0 * kPi, 0.0);
}

}  // namespace

std::string_view to_string(SamplingMeasure measure) noexcept {
  return measure == SamplingMeasure::kProduct ? "product" : "surface";
}

SamplingMeasure parse_measure(std::string_view name) {
  if (name == "product") return SamplingMeasure::kProduct;
  if (name == "surface") return SamplingMeasure::kSurface;
  throw ParameterError("unknown sampling measure '" + std::string(name) + "'");
}

double measure_mass(SamplingMeasure measure) noexcept {
  return measure == SamplingMeasure::kProduct ? 2.0 * kPi * kPi : 4.0 * kPi;
}

SampleSet sample_points(std::size_t m, SamplingMeasure measure, std::uint64_t seed) {
  if (m == 0) throw ParameterError("sample_points: m must be >= 1");
  SampleSet set;
  set.measure = measure;
  set.seed = seed;
  set.points.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    CounterStream rng(derive_key(seed, j));
    const double u_polar = rng.uniform();
    const double u_azimuth = rng.uniform();
    const double phi =
        measure == SamplingMeasure::kProduct ? kPi * u_polar : std::acos(2.0 * u_polar - 1.0);
    set.points.push_back({phi, azimuth(u_azimuth)});
  }
  return set;
}

void write_samples_csv(std::ostream& os, const SampleSet& samples) {
  std::ostringstream buf;
  buf.precision(17);
  buf << "phi,theta\n";
  for (const auto& p : samples.points) buf << p.phi << ',' << p.theta << '\n';
  os << buf.str();
}

MeasurementEnsemble build_ensemble(int degree_bound, const SampleSet& samples) {
  if (degree_bound < 1) throw ParameterError("build_ensemble: D must be >= 1");
  const HarmonicBasis basis(degree_bound);
  const auto m = static_cast<Eigen::Index>(samples.size());
  const auto n = static_cast<Eigen::Index>(basis.size());

  MeasurementEnsemble e;
  e.degree_bound = degree_bound;
  e.phi_matrix.resize(m, n);
  e.precond_diag.resize(m);
  e.normalized.resize(m, n);
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
  for (Eigen::Index j = 0; j < m; ++j) {
    const SpherePoint p = samples.points[j];
    basis.eval_Y_row(p, {e.phi_matrix.row(j).data(), static_cast<std::size_t>(n)});
    e.precond_diag[j] = std::sqrt(polar_sine(p.phi));
    e.normalized.row(j) = (inv_sqrt_m * e.precond_diag[j]) * e.phi_matrix.row(j);
  }
  return e;
}

double isometry_scale() noexcept { return kPi * std::numbers::sqrt2; }

ComplexMatrix isometry_normalized(const MeasurementEnsemble& ensemble) {
  return isometry_scale() * ensemble.normalized;
}

double sample_gram_deviation(int degree_bound, std::size_t m, SamplingMeasure measure,
                             bool preconditioned, std::uint64_t seed) {
  const SampleSet samples = sample_points(m, measure, seed);
  const HarmonicBasis basis(degree_bound);
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n, n);
  ComplexVector row(n);
  for (const SpherePoint& p : samples.points) {
    basis.eval_Y_row(p, {row.data(), static_cast<std::size_t>(n)});
    const double w = preconditioned ? polar_sine(p.phi) : 1.0;
    gram.selfadjointView<Eigen::Lower>().rankUpdate(row, w);
  }
  Eigen::MatrixXcd full = gram.selfadjointView<Eigen::Lower>();
  full *= measure_mass(measure) / static_cast<double>(m);
  full -= Eigen::MatrixXcd::Identity(n, n);
  return full.cwiseAbs().maxCoeff();
}

double expected_gram_check(int degree_bound, std::size_t m, std::uint64_t seed) {
  return sample_gram_deviation(degree_bound, m, SamplingMeasure::kProduct, true, seed);
}

}  // namespace sphcs
