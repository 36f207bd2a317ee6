#include "sphcs/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "sphcs/error.hpp"

namespace sphcs {

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

// (sin phi)^|k|; exactly zero at the poles for |k| >= 1.
double sine_power(double s, int k_abs) {
  if (k_abs == 0) return 1.0;
  if (s == 0.0) return 0.0;
  if (k_abs >= 64) return std::exp(k_abs * std::log(s));
  double r = 1.0;
  for (int i = 0; i < k_abs; ++i) r *= s;
  return r;
}

double polar_cosine(double phi) noexcept {
  if (phi == 0.0) return 1.0;
  if (phi == std::numbers::pi) return -1.0;
  return std::clamp(std::cos(phi), -1.0, 1.0);
}

void check_index(HarmonicIndex idx) {
  if (idx.ell < 0 || std::abs(idx.k) > idx.ell) {
    throw IndexError("invalid harmonic index (" + std::to_string(idx.ell) + ", " +
                     std::to_string(idx.k) + ")");
  }
}

}  // namespace

std::size_t linear_index(HarmonicIndex idx) {
  check_index(idx);
  return static_cast<std::size_t>(idx.ell) * idx.ell + idx.ell + idx.k;
}

HarmonicIndex from_linear(std::size_t i, int degree_bound) {
  const std::size_t n = static_cast<std::size_t>(degree_bound) * degree_bound;
  if (degree_bound < 1 || i >= n) {
    throw RangeError("linear index " + std::to_string(i) + " outside [0, " + std::to_string(n) +
                     ")");
  }
  auto ell = static_cast<std::size_t>(std::sqrt(static_cast<double>(i)));
  while (ell * ell > i) --ell;
  while ((ell + 1) * (ell + 1) <= i) ++ell;
  const auto k = static_cast<long long>(i) - static_cast<long long>(ell * ell + ell);
  return {static_cast<int>(ell), static_cast<int>(k)};
}

SpherePoint SpherePoint::checked(double phi, double theta) {
  if (!(phi >= 0.0 && phi <= std::numbers::pi) ||
      !(theta >= 0.0 && theta < 2.0 * std::numbers::pi)) {
    throw DomainError("sphere point outside [0, pi] x [0, 2 pi)");
  }
  return {phi, theta};
}

double polar_sine(double phi) noexcept {
  if (phi == 0.0 || phi == std::numbers::pi) return 0.0;
  return std::sin(phi);
}

CoefficientVector::CoefficientVector(int degree_bound)
    : degree_bound_(degree_bound),
      entries_(static_cast<std::size_t>(std::max(degree_bound, 0)) * std::max(degree_bound, 0)) {
  if (degree_bound < 1) throw ParameterError("degree bound D must be >= 1");
}

CoefficientVector::CoefficientVector(int degree_bound, std::vector<Complex> entries)
    : degree_bound_(degree_bound), entries_(std::move(entries)) {
  if (degree_bound < 1) throw ParameterError("degree bound D must be >= 1");
  if (entries_.size() != static_cast<std::size_t>(degree_bound) * degree_bound) {
    throw ParameterError("coefficient vector length must be D^2");
  }
}

std::size_t CoefficientVector::sparsity() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](Complex v) { return std::abs(v) > 0.0; }));
}

Complex eval_Y(HarmonicIndex idx, SpherePoint p) {
  check_index(idx);
  const int k_abs = std::abs(idx.k);
  const RecurrenceTable table = build_recurrence(JacobiParameter(k_abs), idx.ell - k_abs);
  const double s = polar_sine(p.phi);
  // Same operation order as HarmonicBasis::eval_Y_row so both agree bitwise.
  const double factor = sine_power(s, k_abs) * kInvSqrt2Pi;
  const double radial = factor * eval_all(table, polar_cosine(p.phi)).back();
  return std::polar(1.0, idx.k * p.theta) * radial;
}

Complex eval_Q(HarmonicIndex idx, SpherePoint p) {
  return std::sqrt(polar_sine(p.phi)) * eval_Y(idx, p);
}

HarmonicBasis::HarmonicBasis(int degree_bound) : degree_bound_(degree_bound) {
  if (degree_bound < 1) throw ParameterError("degree bound D must be >= 1");
  tables_.reserve(degree_bound);
  for (int a = 0; a < degree_bound; ++a) {
    tables_.push_back(build_recurrence(JacobiParameter(a), degree_bound - 1 - a));
  }
}

void HarmonicBasis::eval_Y_row(SpherePoint p, std::span<Complex> out) const {
  if (out.size() != size()) throw ParameterError("eval_Y_row: output length must be D^2");
  const double s = polar_sine(p.phi);
  const double x = polar_cosine(p.phi);
  std::vector<double> poly(degree_bound_);
  for (int a = 0; a < degree_bound_; ++a) {
    const RecurrenceTable& t = tables_[a];
    eval_all_into(t, x, poly);
    const double factor = sine_power(s, a) * kInvSqrt2Pi;
    const Complex phase_pos = std::polar(1.0, a * p.theta);
    const Complex phase_neg = std::polar(1.0, -a * p.theta);
    for (int n = 0; n <= t.max_degree; ++n) {
      const int ell = a + n;
      const double radial = factor * poly[n];
      const std::size_t centre = static_cast<std::size_t>(ell) * ell + ell;
      out[centre + a] = phase_pos * radial;
      if (a != 0) out[centre - a] = phase_neg * radial;
    }
  }
}

Complex synthesize(const CoefficientVector& c, SpherePoint p) {
  const HarmonicBasis basis(c.degree_bound());
  std::vector<Complex> row(basis.size());
  basis.eval_Y_row(p, row);
  Complex sum = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i) sum += c[i] * row[i];
  return sum;
}

double best_s_term_error(std::span<const Complex> z, std::size_t s) {
  if (s > z.size()) throw ParameterError("best_s_term_error: s exceeds vector length");
  std::vector<std::size_t> order(z.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Largest modulus first; ties keep the lower index.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(z[a]) > std::abs(z[b]); });
  double tail = 0.0;
  for (std::size_t r = s; r < order.size(); ++r) tail += std::abs(z[order[r]]);
  return tail;
}

std::vector<Complex> gram_matrix_Q(int degree_bound, int n_phi, int n_theta) {
  if (n_theta < 1 || n_phi < 1) throw ParameterError("gram_matrix_Q: empty quadrature");
  const HarmonicBasis basis(degree_bound);
  const std::size_t n = basis.size();
  const QuadratureRule rule = gauss_legendre_rule(n_phi);
  const double dtheta = 2.0 * std::numbers::pi / n_theta;

  std::vector<Complex> gram(n * n, 0.0);
  std::vector<Complex> row(n);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    // dphi over [0, pi] becomes dx / sin(phi) under x = cos(phi), which
    // cancels one factor of (sin phi) in Q Q'^*.
    const double phi = std::acos(rule.nodes[q]);
    for (int j = 0; j < n_theta; ++j) {
      basis.eval_Y_row({phi, j * dtheta}, row);
      const double w = rule.weights[q] * dtheta;
      for (std::size_t r = 0; r < n; ++r) {
        const Complex wr = w * row[r];
        for (std::size_t c = 0; c < n; ++c) gram[r * n + c] += wr * std::conj(row[c]);
      }
    }
  }
  return gram;
}

double gram_deviation_Q(int degree_bound, int n_phi, int n_theta) {
  const auto gram = gram_matrix_Q(degree_bound, n_phi, n_theta);
  const std::size_t n = static_cast<std::size_t>(degree_bound) * degree_bound;
  double dev = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      dev = std::max(dev, std::abs(gram[r * n + c] - (r == c ? 1.0 : 0.0)));
    }
  }
  return dev;
}

std::vector<double> q_sup_norms(int ell_max, int grid_size) {
  if (ell_max < 0) throw ParameterError("q_sup_norms: ell_max must be >= 0");
  // |Q_ell^k| = (1 - x^2)^{1/4 + |k|/2} |p_{ell-|k|}^{|k|}(x)| / sqrt(2 pi)
  std::vector<double> sup(ell_max + 1, 0.0);
  for (int a = 0; a <= ell_max; ++a) {
    const auto ws = weighted_sup_all(JacobiParameter(a), ell_max - a, grid_size);
    for (int n = 0; n <= ell_max - a; ++n) {
      sup[a + n] = std::max(sup[a + n], ws[n] * kInvSqrt2Pi);
    }
  }
  return sup;
}

double growth_exponent_fit(int ell_max, int grid_size) {
  if (ell_max < 10) throw ParameterError("growth_exponent_fit: ell_max must be >= 10");
  const auto sup = q_sup_norms(ell_max, grid_size);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (int ell = ell_max / 2; ell <= ell_max; ++ell) {
    const double x = std::log(ell + 1.0);
    const double y = std::log(sup[ell]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

void write_coefficients_csv(std::ostream& os, const CoefficientVector& c) {
  std::ostringstream buf;
  buf.precision(17);
  buf << "ell,k,re,im\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    const HarmonicIndex idx = from_linear(i, c.degree_bound());
    buf << idx.ell << ',' << idx.k << ',' << c[i].real() << ',' << c[i].imag() << '\n';
  }
  os << buf.str();
}

CoefficientVector read_coefficients_csv(std::istream& is, int degree_bound) {
  CoefficientVector c(degree_bound);
  std::vector<bool> seen(c.size(), false);
  std::string line;
  if (!std::getline(is, line) || line.rfind("ell,k,re,im", 0) != 0) {
    throw ParameterError("coefficient CSV: missing header `ell,k,re,im`");
  }
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::istringstream row(line);
    HarmonicIndex idx;
    double re = 0.0, im = 0.0;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(row >> idx.ell >> c1 >> idx.k >> c2 >> re >> c3 >> im) || c1 != ',' || c2 != ',' ||
        c3 != ',') {
      throw ParameterError("coefficient CSV: malformed row " + std::to_string(line_no));
    }
    if (idx.ell < 0 || idx.ell >= degree_bound || std::abs(idx.k) > idx.ell) {
      throw ParameterError("coefficient CSV: index out of range on row " +
                           std::to_string(line_no));
    }
    const std::size_t i = linear_index(idx);
    if (seen[i]) {
      throw ParameterError("coefficient CSV: repeated index on row " + std::to_string(line_no));
    }
    seen[i] = true;
    c[i] = Complex(re, im);
  }
  return c;
}

}  // namespace sphcs
