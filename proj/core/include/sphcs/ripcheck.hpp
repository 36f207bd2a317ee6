#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sphcs/linalg.hpp"

namespace sphcs {

/// Exact supports enumerated at most; beyond this only the Monte Carlo lower
/// bound is available.
inline constexpr std::uint64_t kExactSupportBudget = 1'000'000;

/// 3 / (4 + sqrt(6)) ~ 0.46515, the delta_2s level below which l1
/// minimization recovers every s-sparse vector exactly.
double recovery_threshold() noexcept;

struct RipEstimate {
  std::size_t s = 0;
  double delta = 0.0;
  std::vector<std::size_t> extremal_support;
  std::uint64_t supports_checked = 0;
  /// True for exhaustive enumeration; false for a randomized lower bound.
  bool exact = true;
};

/// Number of s-subsets of an n-set, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t s) noexcept;

/// Exact delta_s = max over |S| = s of max(lambda_max - 1, 1 - lambda_min) of
/// Psi_S^* Psi_S. Throws ParameterError unless 1 <= s <= N, and BudgetError
/// when C(N, s) exceeds `budget`.
RipEstimate restricted_isometry_constant(const ComplexMatrix& psi, std::size_t s,
                                         std::uint64_t budget = kExactSupportBudget);

/// Max deviation over `n_trials` uniformly random supports (trial t depends
/// only on (seed, t)); a lower bound on delta_s.
RipEstimate randomized_rip_lower_bound(const ComplexMatrix& psi, std::size_t s,
                                       std::uint64_t n_trials, std::uint64_t seed);

/// delta_2s < 3 / (4 + sqrt(6)). Throws ParameterError for negative input.
bool recovery_threshold_met(double delta_2s);

}  // namespace sphcs
