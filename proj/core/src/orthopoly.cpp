#include "sphcs/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sphcs/error.hpp"

namespace sphcs {

namespace {

constexpr double kMinAlpha = -1.0 + 1e-9;

// Monic recurrence coefficient beta_n = <x P_n, P_{n-1}> / <P_{n-1}, P_{n-1}>
// for the weight (1 - x^2)^alpha. The general formula is 0/0 at n = 1 when
// alpha = -1/2, so beta_1 = mu_2 / mu_0 = 1 / (2 alpha + 3) is used directly.
double monic_beta(int n, double alpha) {
  if (n == 1) return 1.0 / (2.0 * alpha + 3.0);
  const double nn = n;
  return nn * (nn + 2.0 * alpha) /
         ((2.0 * nn + 2.0 * alpha + 1.0) * (2.0 * nn + 2.0 * alpha - 1.0));
}

// Legendre P_n(x) and its derivative by the classical recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

void append_mapped(QuadratureRule& out, const QuadratureRule& ref, double lo, double hi) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (std::size_t q = 0; q < ref.size(); ++q) {
    out.nodes.push_back(mid + half * ref.nodes[q]);
    out.weights.push_back(half * ref.weights[q]);
  }
}

}  // namespace

JacobiParameter::JacobiParameter(double alpha) : alpha_(alpha) {
  if (!std::isfinite(alpha) || alpha < kMinAlpha) {
    throw ParameterError("Jacobi parameter must be finite and > -1, got " +
                         std::to_string(alpha));
  }
}

double JacobiParameter::mass() const {
  // B(1/2, alpha + 1) = sqrt(pi) Gamma(alpha + 1) / Gamma(alpha + 3/2)
  return std::sqrt(std::numbers::pi) *
         std::exp(std::lgamma(alpha_ + 1.0) - std::lgamma(alpha_ + 1.5));
}

bool JacobiParameter::is_polynomial_weight() const noexcept {
  return alpha_ >= 0.0 && alpha_ == std::floor(alpha_);
}

RecurrenceTable build_recurrence(JacobiParameter alpha, int n_max, Normalization normalization) {
  if (n_max < 0) throw ParameterError("n_max must be >= 0");
  RecurrenceTable t;
  t.alpha = alpha;
  t.normalization = normalization;
  t.max_degree = n_max;
  t.a.resize(n_max);
  t.b.assign(n_max, 0.0);
  t.c.resize(n_max);
  t.norm0 = normalization == Normalization::kProbability ? 1.0 : 1.0 / std::sqrt(alpha.mass());

  const double al = alpha.value();
  for (int n = 0; n < n_max; ++n) {
    const double next = std::sqrt(monic_beta(n + 1, al));
    t.a[n] = 1.0 / next;
    t.c[n] = n == 0 ? 0.0 : std::sqrt(monic_beta(n, al)) / next;
  }
  return t;
}

void eval_all_into(const RecurrenceTable& table, double x, std::span<double> out) noexcept {
  out[0] = table.norm0;
  if (table.max_degree == 0) return;
  out[1] = table.a[0] * x * out[0];
  for (int n = 1; n < table.max_degree; ++n) {
    out[n + 1] = (table.a[n] * x + table.b[n]) * out[n] - table.c[n] * out[n - 1];
  }
}

std::vector<double> eval_all(const RecurrenceTable& table, double x) {
  if (!(x >= -1.0 && x <= 1.0)) {
    throw DomainError("eval_all: x = " + std::to_string(x) + " outside [-1, 1]");
  }
  std::vector<double> out(table.max_degree + 1);
  eval_all_into(table, x, out);
  return out;
}

QuadratureRule gauss_legendre_rule(int n_points) {
  if (n_points < 1) throw ParameterError("gauss_legendre_rule: n_points must be >= 1");
  QuadratureRule rule;
  rule.nodes.assign(n_points, 0.0);
  rule.weights.assign(n_points, 0.0);
  rule.exact_degree = 2 * n_points - 1;
  if (n_points == 1) {
    rule.weights[0] = 2.0;
    return rule;
  }
  const int half = (n_points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // i-th largest root lies in (cos(pi (i+1)/(n+1/2)), cos(pi i/(n+1/2)))
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n_points + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_with_derivative(n_points, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto [p, dp] = legendre_with_derivative(n_points, x);
    (void)p;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n_points - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n_points - 1 - i] = w;
  }
  if (n_points % 2 == 1) rule.nodes[n_points / 2] = 0.0;
  return rule;
}

QuadratureRule graded_gauss_legendre_rule(int panels_per_side, int points_per_panel,
                                          double ratio) {
  if (panels_per_side < 1 || points_per_panel < 1 || !(ratio > 0.0 && ratio <= 1.0)) {
    throw ParameterError("graded_gauss_legendre_rule: invalid partition");
  }
  const QuadratureRule ref = gauss_legendre_rule(points_per_panel);
  std::vector<double> edges{0.0};
  const double first = ratio == 1.0 ? 1.0 / panels_per_side
                                    : (1.0 - ratio) / (1.0 - std::pow(ratio, panels_per_side));
  double width = first;
  for (int j = 0; j < panels_per_side; ++j) {
    edges.push_back(j + 1 == panels_per_side ? 1.0 : edges.back() + width);
    width *= ratio;
  }
  QuadratureRule rule;
  rule.exact_degree = ref.exact_degree;
  for (std::size_t j = edges.size() - 1; j > 0; --j) append_mapped(rule, ref, -edges[j], -edges[j - 1]);
  for (std::size_t j = 0; j + 1 < edges.size(); ++j) append_mapped(rule, ref, edges[j], edges[j + 1]);
  return rule;
}

QuadratureRule orthonormality_rule(JacobiParameter alpha, int n_max, int n_points) {
  if (alpha.is_polynomial_weight() &&
      2 * n_max + 2 * static_cast<int>(alpha.value()) <= 2 * n_points - 1) {
    return gauss_legendre_rule(n_points);
  }
  return graded_gauss_legendre_rule(16, 32);
}

double check_orthonormality(const RecurrenceTable& table, const QuadratureRule& rule) {
  const int n = table.max_degree + 1;
  const double al = table.alpha.value();
  const double scale =
      table.normalization == Normalization::kProbability ? 1.0 / table.alpha.mass() : 1.0;
  std::vector<double> gram(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> p(n);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double x = rule.nodes[q];
    const double w = rule.weights[q] * scale * std::pow(1.0 - x * x, al);
    eval_all_into(table, x, p);
    for (int i = 0; i < n; ++i) {
      const double wi = w * p[i];
      for (int j = 0; j <= i; ++j) gram[i * n + j] += wi * p[j];
    }
  }
  double dev = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      dev = std::max(dev, std::abs(gram[i * n + j] - (i == j ? 1.0 : 0.0)));
    }
  }
  return dev;
}

std::vector<double> weighted_sup_all(JacobiParameter alpha, int n_max, int grid_size,
                                     Normalization normalization) {
  if (grid_size < 2) throw ParameterError("weighted_sup: grid_size must be >= 2");
  if (n_max < 0) throw ParameterError("weighted_sup: degree must be >= 0");
  const RecurrenceTable table = build_recurrence(alpha, n_max, normalization);
  const double exponent = 0.5 + alpha.value();  // (1 - x^2)^(1/4 + a/2) = sin(t)^(1/2 + a)
  std::vector<double> sup(n_max + 1, 0.0);
  std::vector<double> p(n_max + 1);
  for (int j = 0; j < grid_size; ++j) {
    const double t = std::numbers::pi * j / (grid_size - 1);
    const double x = j == 0 ? 1.0 : (j == grid_size - 1 ? -1.0 : std::cos(t));
    const double s = j == 0 || j == grid_size - 1 ? 0.0 : std::sin(t);
    const double w = std::pow(s, exponent);
    eval_all_into(table, x, p);
    for (int n = 0; n <= n_max; ++n) sup[n] = std::max(sup[n], w * std::abs(p[n]));
  }
  return sup;
}

double weighted_sup(JacobiParameter alpha, int n, int grid_size, Normalization normalization) {
  return weighted_sup_all(alpha, n, grid_size, normalization).back();
}

}  // namespace sphcs
