#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sphcs/l1solve.hpp"
#include "sphcs/sensing.hpp"
#include "sphcs/spherical.hpp"

namespace sphcs {

/// How the ground-truth coefficient vector of a trial is drawn.
enum class CoefficientModel {
  /// Uniform random support of size s, i.i.d. standard complex Gaussian
  /// values (E|c|^2 = 1) on it.
  kSparseGaussian,
  /// Every entry nonzero: the r-th largest modulus is (r + 1)^-2, placed on a
  /// random permutation of the indices with uniform random phases.
  kCompressible,
};

struct TrialSpec {
  int degree_bound = 16;
  std::size_t sparsity = 1;
  std::size_t samples = 1;
  SamplingMeasure measure = SamplingMeasure::kProduct;
  double noise_level = 0.0;
  std::uint64_t seed = 0;
  double success_tolerance = 1e-4;
  CoefficientModel model = CoefficientModel::kSparseGaussian;

  /// Throws ParameterError unless D >= 1, s <= D^2, m >= 1 and the noise
  /// level and tolerance are non-negative.
  void validate() const;
};

struct TrialRecord {
  TrialSpec spec;
  /// ||c - c_hat||_2 / ||c||_2; equals absolute_error when c = 0.
  double relative_error = 0.0;
  double absolute_error = 0.0;
  /// sigma_s(c)_1 of the ground truth.
  double best_s_term_error = 0.0;
  bool success = false;
  bool converged = false;
  int solver_iterations = 0;
  std::chrono::duration<double> wall_time{0.0};
  CoefficientVector truth{1};
  CoefficientVector estimate{1};
};

/// Ground-truth coefficients of a trial; depends only on (spec.seed, D, s,
/// model).
CoefficientVector draw_coefficients(const TrialSpec& spec);

/// One recovery experiment: draw c, sample points, synthesize, add noise
/// uniform on the complex disk of radius noise_level, recover, and score.
/// Solver non-convergence is recorded as failure.
TrialRecord run_trial(const TrialSpec& spec, const SolverConfig& cfg = {});

/// Seed of trial `trial` in cell (s, m); depends on nothing else, so any
/// cell can be recomputed alone.
std::uint64_t cell_trial_seed(std::uint64_t base_seed, std::size_t s, std::size_t m,
                              std::size_t trial) noexcept;

struct PhaseDiagramSpec {
  std::vector<std::size_t> s_values;
  std::vector<std::size_t> m_values;
  int degree_bound = 16;
  SamplingMeasure measure = SamplingMeasure::kProduct;
  std::size_t n_trials = 20;
  std::uint64_t base_seed = 0;
  double success_tolerance = 1e-4;
  /// Worker threads; 0 selects std::thread::hardware_concurrency().
  unsigned threads = 1;
};

struct PhaseDiagramResult {
  std::vector<std::size_t> s_values;
  std::vector<std::size_t> m_values;
  /// frequencies[i][j]: success fraction at (s_values[j], m_values[i]).
  std::vector<std::vector<double>> frequencies;
  std::size_t n_trials = 0;
  SamplingMeasure measure = SamplingMeasure::kProduct;
  std::uint64_t base_seed = 0;

  double frequency(std::size_t s_pos, std::size_t m_pos) const {
    return frequencies.at(m_pos).at(s_pos);
  }
  double mean_frequency() const;
};

using ProgressCallback = std::function<void(std::size_t done, std::size_t total)>;

/// Runs n_trials per (s, m) cell on a work queue. Results do not depend on
/// the thread count or completion order.
PhaseDiagramResult phase_diagram(const PhaseDiagramSpec& spec, const SolverConfig& cfg = {},
                                 const ProgressCallback& progress = {});

/// Grid a:b:step (inclusive of b when reachable). Throws ParameterError on
/// malformed text, step 0, or a > b.
std::vector<std::size_t> parse_grid(const std::string& text);

struct NoiseSweepSpec {
  int degree_bound = 16;
  std::size_t sparsity = 5;
  std::size_t samples = 150;
  SamplingMeasure measure = SamplingMeasure::kProduct;
  std::vector<double> epsilons;
  std::size_t n_trials = 20;
  std::uint64_t seed = 0;
  CoefficientModel model = CoefficientModel::kSparseGaussian;
  unsigned threads = 1;
};

struct NoiseSweepRow {
  double epsilon = 0.0;
  double median_error = 0.0;  // median ||c - c_hat||_2
  /// Median of sigma_s(c)_1 / sqrt(s) over the trials (0 for sparse c).
  double median_tail_term = 0.0;
  /// Median of ||c - c_hat||_2 / epsilon over the trials (NaN at epsilon 0),
  /// an empirical estimate of the noise constant.
  double median_noise_constant = 0.0;
  std::size_t n_trials = 0;
};

/// Trials use the same seeds at every epsilon, so the coefficients, points
/// and noise directions are shared and only the noise radius changes.
std::vector<NoiseSweepRow> noise_sweep(const NoiseSweepSpec& spec, const SolverConfig& cfg = {});

enum class ExportFormat { kCsv, kPgm };

/// CSV `s,m,frequency` (shortest round-trip decimals, s-major) or plain PGM (P2) with m
/// descending down the rows, s ascending across, gray = round(255 (1 - f)).
void export_result(const PhaseDiagramResult& result, std::ostream& os, ExportFormat format);
void export_result(const PhaseDiagramResult& result, const std::filesystem::path& path,
                   ExportFormat format);

/// Reads the CSV written by export_result back into a result (grids taken
/// from the rows in first-appearance order).
PhaseDiagramResult read_phase_csv(std::istream& is);

struct BoundCheck {
  std::string name;
  double measured = 0.0;
  double reference = 0.0;
  std::string relation;  // how measured is compared with reference
  bool pass = false;
};

/// Growth-bound, orthonormality and sup-norm checks for the Jacobi and
/// spherical harmonic systems.
std::vector<BoundCheck> run_bound_checks();

void write_bound_report(std::ostream& os, const std::vector<BoundCheck>& checks);

/// Runs the checks, writes the report to `report_path` (stdout when empty)
/// and returns 0 if all pass, 1 otherwise. Throws IoError when the report
/// cannot be written.
int verify_bounds(const std::filesystem::path& report_path);

}  // namespace sphcs
