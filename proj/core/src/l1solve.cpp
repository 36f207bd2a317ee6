#include "sphcs/l1solve.hpp"

#include <algorithm>
#include <cmath>

#include "sphcs/error.hpp"
#include "sphcs/rng.hpp"

namespace sphcs {

namespace {

constexpr double kNormInflation = 1.0001;

// Restart schedule: checked every kRestartPeriod iterations against the
// iterate-change residual recorded at the last restart.
constexpr int kRestartPeriod = 64;
constexpr double kSufficientDecay = 0.2;
constexpr double kNecessaryDecay = 0.8;
constexpr double kArtificialFraction = 0.36;
constexpr double kWeightSmoothing = 0.5;

void soft_threshold_in_place(ComplexVector& z, double tau) noexcept {
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double mod = std::abs(z[i]);
    z[i] = mod > tau ? z[i] * (1.0 - tau / mod) : Complex(0.0, 0.0);
  }
}

}  // namespace

void SolverConfig::validate() const {
  if (max_iterations < 1 || !(feasibility_tolerance > 0.0) || !(stall_tolerance > 0.0) ||
      !(step_ratio > 0.0 && step_ratio < 1.0)) {
    throw ParameterError("invalid solver configuration");
  }
}

double operator_norm(const ComplexMatrix& psi) {
  if (psi.size() == 0 || psi.cwiseAbs().maxCoeff() == 0.0) {
    throw DegenerateError("operator_norm: zero matrix");
  }
  // Fixed pseudo-random start; a constant vector can be orthogonal to the
  // leading singular vector.
  CounterStream rng(derive_key(0x5eed, static_cast<std::uint64_t>(psi.cols())));
  ComplexVector v(psi.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(rng.normal(), rng.normal());
  v.normalize();

  double lambda = 0.0;
  for (int it = 0; it < 100000; ++it) {
    ComplexVector w = psi.adjoint() * (psi * v);
    const double next = w.norm();
    if (next == 0.0) {
      // Start vector in the null space; restart from a different direction.
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(rng.normal(), rng.normal());
      v.normalize();
      continue;
    }
    v = w / next;
    if (std::abs(next - lambda) <= 1e-13 * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(lambda);
}

ComplexVector complex_soft_threshold(const ComplexVector& z, double tau) {
  if (!(tau >= 0.0)) throw ParameterError("complex_soft_threshold: tau must be >= 0");
  ComplexVector out = z;
  soft_threshold_in_place(out, tau);
  return out;
}

SolverResult solve_bpdn(const ComplexMatrix& psi, const ComplexVector& b, double epsilon,
                        const SolverConfig& cfg) {
  cfg.validate();
  if (b.size() != psi.rows()) throw ParameterError("solve_bpdn: b length does not match rows");
  if (!(epsilon >= 0.0)) throw ParameterError("solve_bpdn: epsilon must be >= 0");

  const Eigen::Index n = psi.cols();
  SolverResult result;
  result.solution = ComplexVector::Zero(n);

  const double lipschitz = kNormInflation * operator_norm(psi);
  // tau = step_ratio * w / L, sigma = step_ratio / (w L); the primal weight w
  // is rebalanced at each restart from the distances the primal and dual
  // iterates travelled since the previous one.
  double weight = 1.0;

  // Explicit adjoint copy: both products then stream through contiguous rows.
  const ComplexMatrix psi_adjoint = psi.adjoint();
  ComplexVector& z = result.solution;
  ComplexVector y = ComplexVector::Zero(psi.rows());
  ComplexVector psi_z = ComplexVector::Zero(psi.rows());
  ComplexVector z_next(n);
  ComplexVector y_next(psi.rows());
  ComplexVector psi_z_next(psi.rows());
  ComplexVector offset(psi.rows());
  ComplexVector z_anchor = z;
  ComplexVector y_anchor = y;
  int anchor_iteration = 0;
  double anchor_residual = -1.0;
  double last_check_residual = INFINITY;

  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const double tau = cfg.step_ratio * weight / lipschitz;
    const double sigma = cfg.step_ratio / (weight * lipschitz);

    z_next.noalias() = psi_adjoint * y;
    z_next = z - tau * z_next;
    soft_threshold_in_place(z_next, tau);
    psi_z_next.noalias() = psi * z_next;

    y_next = y + sigma * (2.0 * psi_z_next - psi_z);
    // y+ = v - sigma * proj_{B(b, eps)}(v / sigma)
    offset = y_next / sigma - b;
    const double dist = offset.norm();
    if (dist > epsilon) offset *= epsilon / dist;
    y_next -= sigma * (b + offset);

    const double change = (z_next - z).norm();
    const double dual_change = (y_next - y).norm();
    z.swap(z_next);
    y.swap(y_next);
    psi_z.swap(psi_z_next);

    const double gap = std::max(0.0, (psi_z - b).norm() - epsilon);
    result.iterations_used = it;
    result.final_feasibility_gap = gap;
    if (gap <= cfg.feasibility_tolerance && change <= cfg.stall_tolerance) {
      result.converged = true;
      break;
    }

    const double residual =
        std::sqrt(change * change / weight + dual_change * dual_change * weight);
    if (anchor_residual < 0.0) anchor_residual = residual;
    if (it % kRestartPeriod != 0) continue;
    const bool restart = residual <= kSufficientDecay * anchor_residual ||
                         (residual <= kNecessaryDecay * anchor_residual &&
                          residual > last_check_residual) ||
                         it - anchor_iteration >= kArtificialFraction * it;
    last_check_residual = residual;
    if (!restart) continue;
    const double primal_moved = (z - z_anchor).norm();
    const double dual_moved = (y - y_anchor).norm();
    if (primal_moved > 1e-14 && dual_moved > 1e-14) {
      weight = std::exp(kWeightSmoothing * std::log(primal_moved / dual_moved) +
                        (1.0 - kWeightSmoothing) * std::log(weight));
    }
    z_anchor = z;
    y_anchor = y;
    anchor_iteration = it;
    anchor_residual = residual;
    last_check_residual = INFINITY;
  }
  result.objective = z.cwiseAbs().sum();
  return result;
}

SolverResult recover(const MeasurementEnsemble& ensemble, const ComplexVector& y,
                     double epsilon_inf, const SolverConfig& cfg) {
  if (y.size() != ensemble.rows()) throw ParameterError("recover: sample count mismatch");
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(ensemble.rows()));
  const ComplexVector b = inv_sqrt_m * (ensemble.precond_diag.cast<Complex>().cwiseProduct(y));
  return solve_bpdn(ensemble.normalized, b, epsilon_inf, cfg);
}

}  // namespace sphcs
