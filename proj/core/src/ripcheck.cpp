#include "sphcs/ripcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sphcs/error.hpp"
#include "sphcs/rng.hpp"

namespace sphcs {

namespace {

// max(lambda_max - 1, 1 - lambda_min) of the principal submatrix of `gram`
// on `support`.
double support_deviation(const Eigen::MatrixXcd& gram, const std::vector<std::size_t>& support,
                         Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>& solver,
                         Eigen::MatrixXcd& block) {
  const auto s = static_cast<Eigen::Index>(support.size());
  for (Eigen::Index i = 0; i < s; ++i) {
    for (Eigen::Index j = 0; j < s; ++j) {
      block(i, j) = gram(static_cast<Eigen::Index>(support[i]), static_cast<Eigen::Index>(support[j]));
    }
  }
  solver.compute(block, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return std::max(ev[s - 1] - 1.0, 1.0 - ev[0]);
}

void check_sparsity(const ComplexMatrix& psi, std::size_t s) {
  if (s < 1 || s > static_cast<std::size_t>(psi.cols())) {
    throw ParameterError("sparsity must satisfy 1 <= s <= N");
  }
}

}  // namespace

double recovery_threshold() noexcept { return 3.0 / (4.0 + std::sqrt(6.0)); }

std::uint64_t binomial(std::uint64_t n, std::uint64_t s) noexcept {
  if (s > n) return 0;
  s = std::min(s, n - s);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= s; ++i) {
    const std::uint64_t num = n - s + i;
    // r * num / i is exact at every step; guard the multiplication.
    const std::uint64_t g = std::gcd(r, i);
    const std::uint64_t rr = r / g;
    const std::uint64_t ii = i / g;
    const std::uint64_t nn = num / ii;
    if (rr > std::numeric_limits<std::uint64_t>::max() / nn) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r = rr * nn;
  }
  return r;
}

RipEstimate restricted_isometry_constant(const ComplexMatrix& psi, std::size_t s,
                                         std::uint64_t budget) {
  check_sparsity(psi, s);
  const auto n = static_cast<std::size_t>(psi.cols());
  const std::uint64_t total = binomial(n, s);
  if (total > budget) {
    throw BudgetError("C(" + std::to_string(n) + ", " + std::to_string(s) + ") supports exceed the " +
                      std::to_string(budget) + " budget; use the randomized lower bound");
  }
  const Eigen::MatrixXcd gram = psi.adjoint() * psi;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(static_cast<Eigen::Index>(s));
  Eigen::MatrixXcd block(s, s);

  RipEstimate est;
  est.s = s;
  est.delta = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> support(s);
  std::iota(support.begin(), support.end(), std::size_t{0});
  while (true) {
    const double dev = support_deviation(gram, support, solver, block);
    ++est.supports_checked;
    if (dev > est.delta) {
      est.delta = dev;
      est.extremal_support = support;
    }
    // Next combination in lexicographic order.
    std::size_t i = s;
    while (i > 0 && support[i - 1] == n - s + (i - 1)) --i;
    if (i == 0) break;
    ++support[i - 1];
    for (std::size_t j = i; j < s; ++j) support[j] = support[j - 1] + 1;
  }
  est.delta = std::max(est.delta, 0.0);
  return est;
}

RipEstimate randomized_rip_lower_bound(const ComplexMatrix& psi, std::size_t s,
                                       std::uint64_t n_trials, std::uint64_t seed) {
  check_sparsity(psi, s);
  if (n_trials < 1) throw ParameterError("randomized_rip_lower_bound: n_trials must be >= 1");
  const auto n = static_cast<std::size_t>(psi.cols());
  const Eigen::MatrixXcd gram = psi.adjoint() * psi;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(static_cast<Eigen::Index>(s));
  Eigen::MatrixXcd block(s, s);

  RipEstimate est;
  est.s = s;
  est.exact = false;
  est.delta = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pool(n);
  for (std::uint64_t t = 0; t < n_trials; ++t) {
    CounterStream rng(derive_key(seed, t));
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < s; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
      std::swap(pool[i], pool[j]);
    }
    std::vector<std::size_t> support(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(s));
    std::sort(support.begin(), support.end());
    const double dev = support_deviation(gram, support, solver, block);
    ++est.supports_checked;
    if (dev > est.delta) {
      est.delta = dev;
      est.extremal_support = std::move(support);
    }
  }
  est.delta = std::max(est.delta, 0.0);
  return est;
}

bool recovery_threshold_met(double delta_2s) {
  if (!(delta_2s >= 0.0)) throw ParameterError("restricted isometry constant must be >= 0");
  return delta_2s < recovery_threshold();
}

}  // namespace sphcs
