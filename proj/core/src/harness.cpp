#include "sphcs/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>
#include <thread>

#include "sphcs/error.hpp"
#include "sphcs/rng.hpp"

namespace sphcs {

namespace {

// Sub-stream ids of a trial seed.
enum Stream : std::uint64_t { kCoefficients = 1, kPoints = 2, kNoise = 3 };

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// Runs task(i) for i in [0, count) on `threads` workers pulling from a shared
// counter. Each task writes only its own output slot.
template <typename Task>
void run_parallel(std::size_t count, unsigned threads, Task&& task,
                  const ProgressCallback& progress) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      task(i);
      if (progress) {
        const std::lock_guard lock(progress_mutex);
        progress(++done, count);
      }
    }
  };
  if (threads == 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
}

}  // namespace

void TrialSpec::validate() const {
  if (degree_bound < 1) throw ParameterError("trial: degree must be >= 1");
  const auto n = static_cast<std::size_t>(degree_bound) * degree_bound;
  if (sparsity > n) throw ParameterError("trial: sparsity exceeds N = D^2");
  if (samples < 1) throw ParameterError("trial: samples must be >= 1");
  if (!(noise_level >= 0.0)) throw ParameterError("trial: noise level must be >= 0");
  if (!(success_tolerance >= 0.0)) throw ParameterError("trial: tolerance must be >= 0");
}

CoefficientVector draw_coefficients(const TrialSpec& spec) {
  spec.validate();
  CoefficientVector c(spec.degree_bound);
  const std::size_t n = c.size();
  CounterStream rng(derive_key(spec.seed, kCoefficients));

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  const std::size_t placed = spec.model == CoefficientModel::kSparseGaussian ? spec.sparsity : n;
  for (std::size_t i = 0; i < placed; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
    std::swap(perm[i], perm[j]);
  }
  for (std::size_t r = 0; r < placed; ++r) {
    if (spec.model == CoefficientModel::kSparseGaussian) {
      const double re = rng.normal();
      const double im = rng.normal();
      c[perm[r]] = Complex(re, im) / std::numbers::sqrt2;
    } else {
      const double modulus = 1.0 / ((r + 1.0) * (r + 1.0));
      c[perm[r]] = std::polar(modulus, 2.0 * std::numbers::pi * rng.uniform());
    }
  }
  return c;
}

TrialRecord run_trial(const TrialSpec& spec, const SolverConfig& cfg) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();

  TrialRecord rec;
  rec.spec = spec;
  rec.truth = draw_coefficients(spec);
  const auto m = static_cast<Eigen::Index>(spec.samples);

  const SampleSet samples =
      sample_points(spec.samples, spec.measure, derive_key(spec.seed, kPoints));
  const MeasurementEnsemble ensemble = build_ensemble(spec.degree_bound, samples);

  const Eigen::Map<const ComplexVector> c(rec.truth.entries().data(),
                                          static_cast<Eigen::Index>(rec.truth.size()));
  ComplexVector y = ensemble.phi_matrix * c;
  if (spec.noise_level > 0.0) {
    CounterStream rng(derive_key(spec.seed, kNoise));
    for (Eigen::Index j = 0; j < m; ++j) {
      const double radius = spec.noise_level * std::sqrt(rng.uniform());
      y[j] += std::polar(radius, 2.0 * std::numbers::pi * rng.uniform());
    }
  }

  const SolverResult sol = recover(ensemble, y, spec.noise_level, cfg);
  rec.estimate = CoefficientVector(
      spec.degree_bound, std::vector<Complex>(sol.solution.data(),
                                              sol.solution.data() + sol.solution.size()));
  rec.absolute_error = (sol.solution - c).norm();
  const double truth_norm = c.norm();
  rec.relative_error = truth_norm > 0.0 ? rec.absolute_error / truth_norm : rec.absolute_error;
  rec.best_s_term_error = best_s_term_error(rec.truth.entries(), spec.sparsity);
  rec.converged = sol.converged;
  rec.solver_iterations = sol.iterations_used;
  rec.success = sol.converged && rec.relative_error <= spec.success_tolerance;
  rec.wall_time = std::chrono::steady_clock::now() - start;
  return rec;
}

std::uint64_t cell_trial_seed(std::uint64_t base_seed, std::size_t s, std::size_t m,
                              std::size_t trial) noexcept {
  return derive_key(derive_key(derive_key(base_seed, s), m), trial);
}

double PhaseDiagramResult::mean_frequency() const {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& row : frequencies) {
    for (double f : row) {
      sum += f;
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / count;
}

PhaseDiagramResult phase_diagram(const PhaseDiagramSpec& spec, const SolverConfig& cfg,
                                 const ProgressCallback& progress) {
  if (spec.s_values.empty() || spec.m_values.empty()) {
    throw ParameterError("phase_diagram: grids must be nonempty");
  }
  if (spec.n_trials < 1) throw ParameterError("phase_diagram: n_trials must be >= 1");
  cfg.validate();

  const std::size_t ns = spec.s_values.size();
  const std::size_t nm = spec.m_values.size();
  const std::size_t total = ns * nm * spec.n_trials;
  std::vector<char> success(total, 0);

  auto task = [&](std::size_t i) {
    const std::size_t trial = i % spec.n_trials;
    const std::size_t cell = i / spec.n_trials;
    const std::size_t s = spec.s_values[cell % ns];
    const std::size_t m = spec.m_values[cell / ns];
    TrialSpec ts;
    ts.degree_bound = spec.degree_bound;
    ts.sparsity = s;
    ts.samples = m;
    ts.measure = spec.measure;
    ts.seed = cell_trial_seed(spec.base_seed, s, m, trial);
    ts.success_tolerance = spec.success_tolerance;
    success[i] = run_trial(ts, cfg).success ? 1 : 0;
  };
  run_parallel(total, spec.threads, task, progress);

  PhaseDiagramResult result;
  result.s_values = spec.s_values;
  result.m_values = spec.m_values;
  result.n_trials = spec.n_trials;
  result.measure = spec.measure;
  result.base_seed = spec.base_seed;
  result.frequencies.assign(nm, std::vector<double>(ns, 0.0));
  for (std::size_t cell = 0; cell < ns * nm; ++cell) {
    std::size_t hits = 0;
    for (std::size_t t = 0; t < spec.n_trials; ++t) hits += success[cell * spec.n_trials + t];
    result.frequencies[cell / ns][cell % ns] =
        static_cast<double>(hits) / static_cast<double>(spec.n_trials);
  }
  return result;
}

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::size_t a = 0, b = 0, step = 0;
  char c1 = 0, c2 = 0;
  int consumed = 0;
  if (std::sscanf(text.c_str(), "%zu%c%zu%c%zu%n", &a, &c1, &b, &c2, &step, &consumed) != 5 ||
      c1 != ':' || c2 != ':' || static_cast<std::size_t>(consumed) != text.size()) {
    throw ParameterError("grid must have the form a:b:step, got '" + text + "'");
  }
  if (step == 0 || a > b) throw ParameterError("grid requires step > 0 and a <= b");
  std::vector<std::size_t> out;
  for (std::size_t v = a; v <= b; v += step) out.push_back(v);
  return out;
}

std::vector<NoiseSweepRow> noise_sweep(const NoiseSweepSpec& spec, const SolverConfig& cfg) {
  if (spec.epsilons.empty()) throw ParameterError("noise_sweep: epsilon list is empty");
  if (spec.n_trials < 1) throw ParameterError("noise_sweep: n_trials must be >= 1");
  for (double e : spec.epsilons) {
    if (!(e >= 0.0)) throw ParameterError("noise_sweep: epsilons must be >= 0");
  }
  const std::size_t ne = spec.epsilons.size();
  const std::size_t total = ne * spec.n_trials;
  std::vector<TrialRecord> records(total);
  auto task = [&](std::size_t i) {
    TrialSpec ts;
    ts.degree_bound = spec.degree_bound;
    ts.sparsity = spec.sparsity;
    ts.samples = spec.samples;
    ts.measure = spec.measure;
    ts.noise_level = spec.epsilons[i / spec.n_trials];
    ts.seed = derive_key(spec.seed, i % spec.n_trials);
    ts.model = spec.model;
    records[i] = run_trial(ts, cfg);
  };
  run_parallel(total, spec.threads, task, {});

  std::vector<NoiseSweepRow> rows;
  const double root_s = std::sqrt(static_cast<double>(std::max<std::size_t>(spec.sparsity, 1)));
  for (std::size_t e = 0; e < ne; ++e) {
    std::vector<double> err, tail, ratio;
    for (std::size_t t = 0; t < spec.n_trials; ++t) {
      const TrialRecord& r = records[e * spec.n_trials + t];
      err.push_back(r.absolute_error);
      tail.push_back(r.best_s_term_error / root_s);
      if (spec.epsilons[e] > 0.0) ratio.push_back(r.absolute_error / spec.epsilons[e]);
    }
    NoiseSweepRow row;
    row.epsilon = spec.epsilons[e];
    row.median_error = median(err);
    row.median_tail_term = median(tail);
    row.median_noise_constant = median(ratio);
    row.n_trials = spec.n_trials;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sphcs
