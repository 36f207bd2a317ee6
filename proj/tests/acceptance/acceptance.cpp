// Acceptance suite: one PASS/FAIL line per criterion, detail lines indented.
// Exit status 0 only when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "sphcs/harness.hpp"
#include "sphcs/l1solve.hpp"
#include "sphcs/orthopoly.hpp"
#include "sphcs/ripcheck.hpp"
#include "sphcs/rng.hpp"
#include "sphcs/sensing.hpp"
#include "sphcs/spherical.hpp"

namespace {

using namespace sphcs;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string summary;
};

int failures = 0;

void detail(const char* fmt, auto... args) {
  std::printf("    ");
  std::printf(fmt, args...);
  std::printf("\n");
  std::fflush(stdout);
}

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!out.pass) ++failures;
  std::printf("[%s] %d. %s: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", id, title,
              out.summary.c_str(), secs);
  std::fflush(stdout);
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome orthonormality() {
  const auto t = Clock::now();
  const double dev = gram_deviation_Q(8, 128, 64);
  const double secs = seconds_since(t);
  return {dev <= 1e-8 && secs < 10.0,
          fmt("Q Gram deviation D=8 = %.3e (<= 1e-8), %.2f s (< 10 s)", dev, secs)};
}

Outcome legendre_bound() {
  const auto t = Clock::now();
  const double bound = 2.0 / std::sqrt(std::numbers::pi);
  // Probability-normalized Legendre system; the constant is tight there.
  const auto sup = weighted_sup_all(JacobiParameter(0.0), 200, 4096, Normalization::kProbability);
  const double secs = seconds_since(t);
  const double max = *std::max_element(sup.begin(), sup.end());
  const auto lebesgue = weighted_sup_all(JacobiParameter(0.0), 200, 4096);
  detail("unnormalized-measure value at n=200: %.6f (tends to sqrt(2/pi))", lebesgue[200]);
  const bool ok = max <= bound + 1e-9 && sup[200] >= 0.95 * bound && secs < 5.0;
  return {ok, fmt("max_n<=200 = %.9f (<= %.9f), n=200 = %.9f (>= %.9f), %.2f s (< 5 s)", max,
                  bound + 1e-9, sup[200], 0.95 * bound, secs)};
}

double ultraspherical_ratio_max(int n_max) {
  double best = 0.0;
  for (int a = 3; a <= 20; ++a) {
    const auto sup = weighted_sup_all(JacobiParameter(a), n_max, 4096);
    for (int n = 1; n <= n_max; ++n) {
      best = std::max(best, sup[n] / (std::pow(a, 1.0 / 6.0) * std::pow(1.0 + double(a) / n, 1.0 / 12.0)));
    }
  }
  return best;
}

Outcome ultraspherical_shape() {
  const auto t = Clock::now();
  const double r50 = ultraspherical_ratio_max(50);
  const double r100 = ultraspherical_ratio_max(100);
  const double secs = seconds_since(t);
  const double rel = r100 / r50 - 1.0;
  return {std::isfinite(r50) && rel < 0.01 && secs < 30.0,
          fmt("max ratio n<=50 = %.6f, n<=100 = %.6f, relative increase %.2e (< 1e-2), %.2f s (< 30 s)",
              r50, r100, rel, secs)};
}

Outcome growth_exponent() {
  const auto t = Clock::now();
  const double slope = growth_exponent_fit(50);
  const double secs = seconds_since(t);
  return {slope >= 0.10 && slope <= 0.30 && secs < 30.0,
          fmt("fitted exponent over ell in [25,50] = %.4f (in [0.10, 0.30]), %.2f s (< 30 s)", slope,
              secs)};
}

// Recovers 200 random s-sparse unit-modulus phase patterns from exact data.
double worst_pattern_error(const ComplexMatrix& psi, std::size_t s, std::uint64_t seed) {
  const auto n = static_cast<std::uint64_t>(psi.cols());
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    CounterStream rng(derive_key(seed, t));
    ComplexVector x = ComplexVector::Zero(psi.cols());
    std::size_t placed = 0;
    while (placed < s) {
      const auto j = static_cast<Eigen::Index>(rng.uniform_index(n));
      if (x[j] != Complex(0.0)) continue;
      x[j] = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
      ++placed;
    }
    const auto r = solve_bpdn(psi, psi * x, 0.0);
    const double err = r.converged ? (r.solution - x).cwiseAbs().maxCoeff() : INFINITY;
    worst = std::max(worst, err);
  }
  return worst;
}

Outcome rip_exactness() {
  bool ok = true;
  int instances = 0;
  const double thr = recovery_threshold();

  // Union of the identity and the unitary DFT: N = 12 columns in C^6.
  {
    const ComplexMatrix psi = oracle::identity_dft_union(6);
    const auto rip = restricted_isometry_constant(psi, 2);
    const double worst = worst_pattern_error(psi, 1, 501);
    const bool pass = rip.delta < thr && worst <= 1e-6;
    ok = ok && pass;
    ++instances;
    detail("[I|F] m=6 N=12 s=1: delta_2 = %.6f, worst error %.2e %s", rip.delta, worst,
           pass ? "ok" : "FAILED");
  }

  // Rescaled preconditioned spherical ensembles, D = 3 (N = 9): the smallest
  // m in the scan whose exact delta_2s certifies recovery.
  for (std::size_t s : {1u, 2u}) {
    bool certified = false;
    for (std::size_t m = 8; m <= 400; m += 4) {
      const auto e = build_ensemble(3, sample_points(m, SamplingMeasure::kProduct, 700 + m));
      const ComplexMatrix psi = isometry_normalized(e);
      const auto rip = restricted_isometry_constant(psi, 2 * s);
      if (rip.delta >= thr) continue;
      certified = true;
      const double worst = worst_pattern_error(psi, s, 900 + s);
      const bool pass = worst <= 1e-6;
      ok = ok && pass;
      ++instances;
      detail("spherical D=3 N=9 m=%zu s=%zu: delta_%zu = %.6f, worst error %.2e %s", m, s, 2 * s,
             rip.delta, worst, pass ? "ok" : "FAILED");
      break;
    }
    if (!certified) {
      ok = false;
      detail("spherical D=3 s=%zu: no m <= 400 certified", s);
    }
  }
  return {ok, fmt("%d certified instances (delta_2s < %.5f), 200 patterns each, exact to 1e-6",
                  instances, thr)};
}

PhaseDiagramResult fast_diagram(SamplingMeasure measure, unsigned threads) {
  PhaseDiagramSpec spec;
  spec.s_values = parse_grid("2:12:2");
  spec.m_values = parse_grid("20:120:20");
  spec.degree_bound = 16;
  spec.measure = measure;
  spec.n_trials = 20;
  spec.base_seed = 1;
  spec.threads = threads;
  return phase_diagram(spec);
}

void print_diagram(const PhaseDiagramResult& r) {
  std::string header = "m\\s ";
  for (auto s : r.s_values) header += fmt("%6zu", s);
  detail("%s", header.c_str());
  for (std::size_t i = r.m_values.size(); i-- > 0;) {
    std::string row = fmt("%4zu", r.m_values[i]);
    for (std::size_t j = 0; j < r.s_values.size(); ++j) row += fmt("%6.2f", r.frequency(j, i));
    detail("%s", row.c_str());
  }
}

Outcome phase_contrast() {
  const auto t = Clock::now();
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  const auto product = fast_diagram(SamplingMeasure::kProduct, threads);
  const auto surface = fast_diagram(SamplingMeasure::kSurface, threads);
  const double secs = seconds_since(t);
  detail("%s", "product measure:");
  print_diagram(product);
  detail("%s", "surface measure:");
  print_diagram(surface);

  std::size_t dominated = 0;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < product.m_values.size(); ++i) {
    for (std::size_t j = 0; j < product.s_values.size(); ++j) {
      ++cells;
      if (product.frequency(j, i) >= surface.frequency(j, i)) ++dominated;
    }
  }
  detail("cells where product >= surface: %zu / %zu", dominated, cells);

  int ok_surface = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    TrialSpec trial;
    trial.sparsity = 10;
    trial.samples = 100;
    trial.measure = SamplingMeasure::kSurface;
    trial.seed = seed;
    ok_surface += run_trial(trial).success ? 1 : 0;
  }
  detail("single trials, surface s=10 m=100: success frequency %.2f over 20 seeds (claim <= 0.1)",
         ok_surface / 20.0);

  const double contrast = product.mean_frequency() - surface.mean_frequency();
  const bool ok = contrast >= 0.3 && surface.mean_frequency() <= 0.1 && secs < 1800.0;
  return {ok, fmt("mean product = %.4f, mean surface = %.4f (<= 0.1), contrast = %.4f (>= 0.3), "
                  "%.0f s (< 1800 s)",
                  product.mean_frequency(), surface.mean_frequency(), contrast, secs)};
}

Outcome noise_robustness() {
  NoiseSweepSpec spec;
  spec.degree_bound = 16;
  spec.sparsity = 5;
  spec.samples = 150;
  spec.epsilons = {0.0, 1e-3, 1e-2};
  spec.n_trials = 20;
  spec.seed = 1;
  spec.threads = std::max(1u, std::thread::hardware_concurrency());
  const auto rows = noise_sweep(spec);
  for (const auto& r : rows) {
    detail("eps = %.0e: median error %.3e, median error/eps %.3f", r.epsilon, r.median_error,
           r.median_noise_constant);
  }
  const double ratio = rows[2].median_error / rows[1].median_error;
  const bool ok = rows[0].median_error <= 1e-6 && ratio >= 5.0 && ratio <= 20.0;
  return {ok, fmt("median error at eps=0 = %.3e (<= 1e-6), ratio eps 1e-2 / 1e-3 = %.3f (in [5, 20]), "
                  "C2 ~ %.3f",
                  rows[0].median_error, ratio, rows[2].median_noise_constant)};
}

Outcome oracle_equivalence() {
  double worst = 0.0;
  int matched = 0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    const ComplexMatrix psi = oracle::gaussian_matrix(6, 10, derive_key(2024, t));
    CounterStream rng(derive_key(2025, t));
    ComplexVector x = ComplexVector::Zero(10);
    x[static_cast<Eigen::Index>(rng.uniform_index(10))] = {rng.normal(), rng.normal()};
    const ComplexVector b = psi * x;
    const auto r = solve_bpdn(psi, b, 0.0);
    const double err = r.converged
                           ? (r.solution - oracle::exhaustive_l1(psi, b)).cwiseAbs().maxCoeff()
                           : INFINITY;
    worst = std::max(worst, err);
    matched += err <= 1e-6 ? 1 : 0;
  }
  return {matched == 50, fmt("%d / 50 instances match the exhaustive oracle, worst %.2e (<= 1e-6)",
                             matched, worst)};
}

#ifdef SPHCS_CLI_PATH
std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "sphcs_acceptance";
  fs::create_directories(dir);
  const std::string cli = SPHCS_CLI_PATH;
  std::vector<std::string> outputs;
  int run = 0;
  bool commands_ok = true;
  for (int threads : {1, 1, 3, 3}) {
    const fs::path prefix = dir / ("phase" + std::to_string(run));
    const fs::path sweep = dir / ("sweep" + std::to_string(run) + ".csv");
    const fs::path coeffs = dir / ("coeffs" + std::to_string(run) + ".csv");
    const std::string t = std::to_string(threads);
    const std::string phase_cmd = "\"" + cli + "\" phase-diagram --degree 8 --s-grid 1:7:3 " +
                                  "--m-grid 10:40:10 --trials 5 --measure product --seed 42 " +
                                  "--quiet --threads " + t + " --out \"" + prefix.string() +
                                  "\" > /dev/null";
    const std::string sweep_cmd = "\"" + cli + "\" noise-sweep --degree 6 --sparsity 3 " +
                                  "--samples 30 --eps-list 0,0.01 --trials 4 --seed 42 " +
                                  "--threads " + t + " > \"" + sweep.string() + "\"";
    const std::string recover_cmd = "\"" + cli + "\" recover --degree 8 --sparsity 3 " +
                                    "--samples 40 --seed 42 --out \"" + coeffs.string() +
                                    "\" > /dev/null";
    commands_ok = commands_ok && std::system(phase_cmd.c_str()) == 0 &&
                  std::system(sweep_cmd.c_str()) == 0;
    // recover exits 1 when the recovery misses the success tolerance; only
    // the written file matters here.
    [[maybe_unused]] const int rc = std::system(recover_cmd.c_str());
    outputs.push_back(slurp(prefix.string() + ".csv") + slurp(prefix.string() + ".pgm") +
                      slurp(sweep) + slurp(coeffs));
    ++run;
  }
  fs::remove_all(dir);
  bool identical = commands_ok && !outputs[0].empty();
  for (const auto& o : outputs) identical = identical && o == outputs[0];
  return {identical, fmt("4 CLI runs (threads 1,1,3,3): phase CSV/PGM, noise-sweep CSV and "
                         "coefficient CSV %s (%zu bytes)",
                         identical ? "byte-identical" : "DIFFER", outputs[0].size())};
}
#else
Outcome determinism() { return {false, "CLI not built"}; }
#endif

}  // namespace

int main() {
  criterion(1, "Q orthonormality", orthonormality);
  criterion(2, "Legendre growth bound", legendre_bound);
  criterion(3, "ultraspherical bound shape", ultraspherical_shape);
  criterion(4, "Q growth exponent", growth_exponent);
  criterion(5, "exact recovery under certified RIP", rip_exactness);
  criterion(6, "phase diagram contrast", phase_contrast);
  criterion(7, "noise robustness", noise_robustness);
  criterion(8, "solver oracle equivalence", oracle_equivalence);
  criterion(9, "CLI determinism", determinism);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
