#pragma once

#include <cstddef>

#include "sphcs/linalg.hpp"
#include "sphcs/sensing.hpp"

namespace sphcs {

struct SolverConfig {
  int max_iterations = 20000;
  /// Bound on ||Psi z - b||_2 - epsilon at convergence.
  double feasibility_tolerance = 1e-9;
  /// Bound on ||z_{n+1} - z_n||_2 at convergence.
  double stall_tolerance = 1e-10;
  /// tau * sigma * L^2 = step_ratio^2, with L the operator norm.
  double step_ratio = 0.99;

  /// Throws ParameterError unless every tolerance is positive and
  /// 0 < step_ratio < 1.
  void validate() const;
};

struct SolverResult {
  ComplexVector solution;
  int iterations_used = 0;
  double final_feasibility_gap = 0.0;
  double objective = 0.0;  // sum of moduli of the solution
  bool converged = false;
};

/// Largest singular value by power iteration on Psi^* Psi (relative
/// accuracy better than 1e-6). Throws DegenerateError for a zero matrix.
double operator_norm(const ComplexMatrix& psi);

/// Entry-wise z_i max(1 - tau / |z_i|, 0), the proximal map of tau ||.||_1.
ComplexVector complex_soft_threshold(const ComplexVector& z, double tau);

/// min ||z||_1 subject to ||Psi z - b||_2 <= epsilon, by the primal-dual
/// hybrid gradient method. epsilon = 0 gives equality-constrained basis
/// pursuit.
///
/// Iteration (starting from z = 0, y = 0):
///   z+ = soft(z - tau Psi^* y, tau)
///   v  = y + sigma Psi (2 z+ - z)
///   y+ = v - sigma proj_{B(b, epsilon)}(v / sigma)
/// with tau = step_ratio w / L, sigma = step_ratio / (w L), L the operator
/// norm inflated by 1.0001 and w a primal weight starting at 1. Every 64
/// iterations an adaptive restart test runs; at a restart w moves halfway (in
/// log scale) toward the ratio of primal to dual distance travelled. Stops
/// when the feasibility gap and the iterate change are both within
/// tolerance, or after max_iterations (converged = false).
SolverResult solve_bpdn(const ComplexMatrix& psi, const ComplexVector& b, double epsilon,
                        const SolverConfig& cfg = {});

/// Recovers coefficients from raw samples y: b = A y / sqrt(m), then
/// solve_bpdn(ensemble.normalized, b, epsilon_inf). The scaling makes
/// ||A Phi z - A y||_2 <= sqrt(m) epsilon_inf equivalent to
/// ||Psi z - b||_2 <= epsilon_inf.
SolverResult recover(const MeasurementEnsemble& ensemble, const ComplexVector& y,
                     double epsilon_inf, const SolverConfig& cfg = {});

}  // namespace sphcs
