#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "sphcs/orthopoly.hpp"

namespace sphcs {

using Complex = std::complex<double>;

/// Degree/order pair (ell, k) with |k| <= ell.
struct HarmonicIndex {
  int ell = 0;
  int k = 0;

  friend bool operator==(const HarmonicIndex&, const HarmonicIndex&) = default;
};

/// Position of (ell, k) in a coefficient vector: ell^2 + ell + k.
/// Throws IndexError when |k| > ell or ell < 0.
std::size_t linear_index(HarmonicIndex idx);

/// Inverse of linear_index. Throws RangeError when i >= degree_bound^2.
HarmonicIndex from_linear(std::size_t i, int degree_bound);

/// Point on the sphere in polar angle phi in [0, pi] and azimuth theta in
/// [0, 2 pi).
struct SpherePoint {
  double phi = 0.0;
  double theta = 0.0;

  /// Validating constructor; throws DomainError outside the chart.
  static SpherePoint checked(double phi, double theta);
};

/// sin(phi) with the poles mapped to exactly zero.
double polar_sine(double phi) noexcept;

/// Coefficients c_{ell,k} of a harmonic polynomial of degree < D, stored by
/// linear index.
class CoefficientVector {
 public:
  explicit CoefficientVector(int degree_bound);
  CoefficientVector(int degree_bound, std::vector<Complex> entries);

  int degree_bound() const noexcept { return degree_bound_; }
  std::size_t size() const noexcept { return entries_.size(); }

  Complex& operator[](HarmonicIndex idx) { return entries_[linear_index(idx)]; }
  const Complex& operator[](HarmonicIndex idx) const { return entries_[linear_index(idx)]; }
  Complex& operator[](std::size_t i) { return entries_[i]; }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }

  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }

  /// Number of entries with nonzero modulus (no thresholding).
  std::size_t sparsity() const noexcept;

 private:
  int degree_bound_;
  std::vector<Complex> entries_;
};

/// Y_ell^k(phi, theta) = e^{ik theta} (sin phi)^|k| p_{ell-|k|}^{|k|}(cos phi) / sqrt(2 pi),
/// orthonormal under sin(phi) dphi dtheta.
Complex eval_Y(HarmonicIndex idx, SpherePoint p);

/// Q_ell^k = (sin phi)^{1/2} Y_ell^k, orthonormal under dphi dtheta.
Complex eval_Q(HarmonicIndex idx, SpherePoint p);

/// Evaluates all N = D^2 harmonics of degree < D at a point, reusing one
/// recurrence table per order.
class HarmonicBasis {
 public:
  explicit HarmonicBasis(int degree_bound);

  int degree_bound() const noexcept { return degree_bound_; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(degree_bound_) * degree_bound_;
  }

  /// out[linear_index(ell, k)] = Y_ell^k(p). Throws ParameterError unless
  /// out.size() == size().
  void eval_Y_row(SpherePoint p, std::span<Complex> out) const;

 private:
  int degree_bound_;
  std::vector<RecurrenceTable> tables_;  // tables_[a] has alpha = a, degree D-1-a
};

/// g(p) = sum c_{ell,k} Y_ell^k(p).
Complex synthesize(const CoefficientVector& c, SpherePoint p);

/// sigma_s(z)_1: sum of the moduli of all but the s largest-modulus entries.
double best_s_term_error(std::span<const Complex> z, std::size_t s);

/// Gram matrix (row-major N x N) of {Q_ell^k} under dphi dtheta, by
/// Gauss-Legendre in x = cos(phi) times the trapezoid rule in theta.
std::vector<Complex> gram_matrix_Q(int degree_bound, int n_phi, int n_theta);

/// Max entry-wise deviation of gram_matrix_Q from the identity.
double gram_deviation_Q(int degree_bound, int n_phi, int n_theta);

/// Element ell: max_k sup_phi |Q_ell^k| on a grid of `grid_size` uniform polar
/// angles (|Q| does not depend on theta).
std::vector<double> q_sup_norms(int ell_max, int grid_size = 4096);

/// Least-squares slope of log(max_k ||Q_ell^k||_inf) against log(ell + 1)
/// over ell in [ell_max / 2, ell_max]. Requires ell_max >= 10.
double growth_exponent_fit(int ell_max, int grid_size = 4096);

/// CSV rows `ell,k,re,im` under that header, full precision.
void write_coefficients_csv(std::ostream& os, const CoefficientVector& c);

/// Reads the CSV written by write_coefficients_csv. Absent (ell, k) pairs are
/// zero; out-of-range or repeated pairs and malformed rows throw
/// ParameterError.
CoefficientVector read_coefficients_csv(std::istream& is, int degree_bound);

}  // namespace sphcs
