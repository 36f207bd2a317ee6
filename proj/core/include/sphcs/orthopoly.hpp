#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sphcs {

/// Exponent of the symmetric Jacobi weight (1 - x^2)^alpha on [-1, 1].
///
/// The weight is integrable only for alpha > -1, so construction rejects
/// alpha < -1 + 1e-9 along with non-finite values.
class JacobiParameter {
 public:
  explicit JacobiParameter(double alpha);

  double value() const noexcept { return alpha_; }

  /// Integral of (1 - x^2)^alpha over [-1, 1], i.e. B(1/2, alpha + 1).
  double mass() const;

  /// True when alpha is a non-negative integer, so that the weight is a
  /// polynomial and a single Gauss-Legendre rule integrates it exactly.
  bool is_polynomial_weight() const noexcept;

 private:
  double alpha_;
};

/// Which measure the orthonormal system is normalized against.
enum class Normalization {
  /// (1 - x^2)^alpha dx, the unnormalized weight.
  kLebesgue,
  /// (1 - x^2)^alpha dx / mass, a probability measure.
  kProbability,
};

/// Coefficients of the orthonormal three-term recurrence
///
///   p_{n+1}(x) = (a_n x + b_n) p_n(x) - c_n p_{n-1}(x),
///
/// for the weight (1 - x^2)^alpha. The weight is even, so every b_n is zero.
struct RecurrenceTable {
  JacobiParameter alpha{0.0};
  Normalization normalization = Normalization::kLebesgue;
  int max_degree = 0;
  std::vector<double> a;  // size max_degree
  std::vector<double> b;  // size max_degree, all zero
  std::vector<double> c;  // size max_degree, c[0] unused (0)
  double norm0 = 0.0;     // constant value of p_0
};

/// Nodes and weights of a rule approximating the integral over [-1, 1]
/// against dx.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int exact_degree = 0;  // polynomial exactness of each Gauss panel

  std::size_t size() const noexcept { return nodes.size(); }
};

RecurrenceTable build_recurrence(JacobiParameter alpha, int n_max,
                                 Normalization normalization = Normalization::kLebesgue);

/// Evaluates (p_0(x), ..., p_{n_max}(x)) by the forward recurrence.
/// Throws DomainError when x lies outside [-1, 1].
std::vector<double> eval_all(const RecurrenceTable& table, double x);

/// Writes p_0(x)..p_{max_degree}(x) into `out`, which must hold
/// max_degree + 1 values. No domain check; used on hot paths.
void eval_all_into(const RecurrenceTable& table, double x, std::span<double> out) noexcept;

/// n-point Gauss-Legendre rule; nodes are the Legendre roots found by
/// Newton iteration from Chebyshev-like initial brackets.
QuadratureRule gauss_legendre_rule(int n_points);

/// Composite Gauss-Legendre rule on a partition of [-1, 1] graded
/// geometrically toward both endpoints. `panels_per_side` panels cover each
/// half of the interval; the panel next to +-1 has width ratio^(panels-1)
/// relative to the first.
QuadratureRule graded_gauss_legendre_rule(int panels_per_side, int points_per_panel,
                                          double ratio = 0.5);

/// Picks the rule used to verify orthonormality of degrees <= n_max: a single
/// Gauss rule of `n_points` when the weight is polynomial, otherwise the
/// graded composite rule (32 panels of 32 points).
QuadratureRule orthonormality_rule(JacobiParameter alpha, int n_max, int n_points);

/// max_{m,n <= n_max} |sum_q w_q p_m(x_q) p_n(x_q) (1 - x_q^2)^alpha - delta_mn|,
/// with the weight divided by its mass for probability-normalized tables.
double check_orthonormality(const RecurrenceTable& table, const QuadratureRule& rule);

/// max over a Chebyshev-spaced grid x_j = cos(pi j / (grid_size - 1)) of
/// (1 - x^2)^(1/4 + alpha/2) |p_n^alpha(x)|.
double weighted_sup(JacobiParameter alpha, int n, int grid_size,
                    Normalization normalization = Normalization::kLebesgue);

/// weighted_sup for every degree 0..n_max at once (one recurrence sweep per
/// grid point). Element n of the result is weighted_sup(alpha, n, grid_size).
std::vector<double> weighted_sup_all(JacobiParameter alpha, int n_max, int grid_size,
                                     Normalization normalization = Normalization::kLebesgue);

}  // namespace sphcs
