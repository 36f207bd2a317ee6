// Command-line driver: single recoveries, phase diagrams, restricted isometry
// constants, growth-bound verification and noise sweeps.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sphcs/error.hpp"
#include "sphcs/harness.hpp"
#include "sphcs/ripcheck.hpp"
#include "sphcs/sensing.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string full(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw sphcs::ParameterError("bad number '" + item + "' in list");
    }
    out.push_back(v);
  }
  if (out.empty()) throw sphcs::ParameterError("empty list");
  return out;
}

struct RecoverArgs {
  int degree = 16;
  std::size_t sparsity = 5;
  std::size_t samples = 150;
  std::string measure = "product";
  double noise = 0.0;
  std::uint64_t seed = 1;
  std::string out;
  int max_iterations = sphcs::SolverConfig{}.max_iterations;
};

int run_recover(const RecoverArgs& a) {
  sphcs::TrialSpec spec;
  spec.degree_bound = a.degree;
  spec.sparsity = a.sparsity;
  spec.samples = a.samples;
  spec.measure = sphcs::parse_measure(a.measure);
  spec.noise_level = a.noise;
  spec.seed = a.seed;
  sphcs::SolverConfig cfg;
  cfg.max_iterations = a.max_iterations;
  const sphcs::TrialRecord rec = sphcs::run_trial(spec, cfg);

  std::cout << "{degree: " << a.degree << ", sparsity: " << a.sparsity
            << ", samples: " << a.samples << ", measure: " << a.measure
            << ", noise: " << full(a.noise) << ", seed: " << a.seed
            << ", relative_error: " << full(rec.relative_error)
            << ", absolute_error: " << full(rec.absolute_error)
            << ", converged: " << (rec.converged ? "true" : "false")
            << ", iterations: " << rec.solver_iterations
            << ", success: " << (rec.success ? "true" : "false") << "}\n";
  if (!a.out.empty()) {
    std::ofstream os(a.out, std::ios::binary | std::ios::trunc);
    if (!os) throw sphcs::IoError("cannot open '" + a.out + "' for writing");
    sphcs::write_coefficients_csv(os, rec.estimate);
    if (!os) throw sphcs::IoError("failed writing '" + a.out + "'");
  }
  return rec.success ? kExitOk : kExitCheckFailed;
}

struct PhaseArgs {
  int degree = 16;
  std::string s_grid = "1:40:1";
  std::string m_grid = "10:250:10";
  std::size_t trials = 20;
  std::string measure = "product";
  std::uint64_t seed = 1;
  std::string out = "phase";
  unsigned threads = 1;
  bool fast = false;
  bool quiet = false;
};

int run_phase(PhaseArgs a, bool trials_given, bool s_given, bool m_given) {
  if (a.fast) {
    if (!s_given) a.s_grid = "2:12:2";
    if (!m_given) a.m_grid = "20:120:20";
    if (!trials_given) a.trials = 10;
  }
  sphcs::PhaseDiagramSpec spec;
  spec.s_values = sphcs::parse_grid(a.s_grid);
  spec.m_values = sphcs::parse_grid(a.m_grid);
  spec.degree_bound = a.degree;
  spec.measure = sphcs::parse_measure(a.measure);
  spec.n_trials = a.trials;
  spec.base_seed = a.seed;
  spec.threads = a.threads;
  sphcs::ProgressCallback progress;
  if (!a.quiet) {
    progress = [](std::size_t done, std::size_t total) {
      if (done == total || done % 50 == 0) {
        std::fprintf(stderr, "\r%zu / %zu trials", done, total);
        if (done == total) std::fputc('\n', stderr);
      }
    };
  }
  const auto result = sphcs::phase_diagram(spec, {}, progress);
  sphcs::export_result(result, std::filesystem::path(a.out + ".csv"), sphcs::ExportFormat::kCsv);
  sphcs::export_result(result, std::filesystem::path(a.out + ".pgm"), sphcs::ExportFormat::kPgm);
  std::cout << "mean_frequency: " << full(result.mean_frequency()) << '\n';
  return kExitOk;
}

struct RipArgs {
  int degree = 3;
  std::size_t samples = 20;
  std::size_t sparsity = 2;
  std::string measure = "product";
  std::uint64_t seed = 1;
  std::uint64_t randomized = 0;
};

int run_rip(const RipArgs& a) {
  const auto samples = sphcs::sample_points(a.samples, sphcs::parse_measure(a.measure), a.seed);
  const auto ensemble = sphcs::build_ensemble(a.degree, samples);
  const auto psi = sphcs::isometry_normalized(ensemble);
  const auto est = a.randomized > 0
                       ? sphcs::randomized_rip_lower_bound(psi, a.sparsity, a.randomized, a.seed)
                       : sphcs::restricted_isometry_constant(psi, a.sparsity);
  std::cout << "{s: " << est.s << ", delta: " << full(est.delta)
            << ", threshold_met: " << (sphcs::recovery_threshold_met(est.delta) ? "true" : "false")
            << ", supports_checked: " << est.supports_checked
            << ", mode: " << (est.exact ? "exact" : "randomized_lower_bound") << "}\n";
  return kExitOk;
}

struct SweepArgs {
  int degree = 16;
  std::size_t sparsity = 5;
  std::size_t samples = 150;
  std::string eps_list = "0,0.001,0.01";
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  std::string measure = "product";
  std::string model = "sparse";
  unsigned threads = 1;
};

int run_sweep(const SweepArgs& a) {
  sphcs::NoiseSweepSpec spec;
  spec.degree_bound = a.degree;
  spec.sparsity = a.sparsity;
  spec.samples = a.samples;
  spec.epsilons = parse_list(a.eps_list);
  spec.n_trials = a.trials;
  spec.seed = a.seed;
  spec.measure = sphcs::parse_measure(a.measure);
  spec.threads = a.threads;
  if (a.model == "sparse") {
    spec.model = sphcs::CoefficientModel::kSparseGaussian;
  } else if (a.model == "compressible") {
    spec.model = sphcs::CoefficientModel::kCompressible;
  } else {
    throw sphcs::ParameterError("unknown coefficient model '" + a.model + "'");
  }
  const auto rows = sphcs::noise_sweep(spec);
  std::cout << "epsilon,median_error,median_tail_term,median_noise_constant\n";
  for (const auto& r : rows) {
    std::cout << full(r.epsilon) << ',' << full(r.median_error) << ','
              << full(r.median_tail_term) << ',' << full(r.median_noise_constant) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recover sparse spherical harmonic polynomials from random point samples"};
  app.require_subcommand(1);

  RecoverArgs rec;
  auto* recover = app.add_subcommand("recover", "Recover one random sparse harmonic polynomial");
  recover->add_option("--degree", rec.degree, "Degree bound D (N = D^2)")->check(CLI::PositiveNumber);
  recover->add_option("--sparsity", rec.sparsity, "Sparsity s");
  recover->add_option("--samples", rec.samples, "Number of samples m")->check(CLI::PositiveNumber);
  recover->add_option("--measure", rec.measure, "product | surface")
      ->check(CLI::IsMember({"product", "surface"}));
  recover->add_option("--noise", rec.noise, "Noise level (sup norm)")->check(CLI::NonNegativeNumber);
  recover->add_option("--seed", rec.seed, "RNG seed");
  recover->add_option("--out", rec.out, "Write recovered coefficients as CSV");
  recover->add_option("--max-iterations", rec.max_iterations, "Solver iteration cap")
      ->check(CLI::PositiveNumber);

  PhaseArgs ph;
  auto* phase = app.add_subcommand("phase-diagram", "Success frequency over an (s, m) grid");
  phase->add_option("--degree", ph.degree, "Degree bound D")->check(CLI::PositiveNumber);
  auto* s_opt = phase->add_option("--s-grid", ph.s_grid, "Sparsity grid a:b:step");
  auto* m_opt = phase->add_option("--m-grid", ph.m_grid, "Sample-count grid a:b:step");
  auto* t_opt = phase->add_option("--trials", ph.trials, "Trials per cell")->check(CLI::PositiveNumber);
  phase->add_option("--measure", ph.measure, "product | surface")
      ->check(CLI::IsMember({"product", "surface"}));
  phase->add_option("--seed", ph.seed, "Base seed");
  phase->add_option("--out", ph.out, "Output prefix (writes PREFIX.csv and PREFIX.pgm)");
  phase->add_option("--threads", ph.threads, "Worker threads (0 = all cores)");
  phase->add_flag("--fast", ph.fast, "Preset grid s = 2:12:2, m = 20:120:20, 10 trials");
  phase->add_flag("--quiet", ph.quiet, "No progress output");

  RipArgs rip;
  auto* ripc = app.add_subcommand("rip", "Restricted isometry constant of a preconditioned ensemble");
  ripc->add_option("--degree", rip.degree, "Degree bound D")->check(CLI::PositiveNumber);
  ripc->add_option("--samples", rip.samples, "Number of samples m")->check(CLI::PositiveNumber);
  ripc->add_option("--sparsity", rip.sparsity, "Sparsity s")->check(CLI::PositiveNumber);
  ripc->add_option("--measure", rip.measure, "product | surface")
      ->check(CLI::IsMember({"product", "surface"}));
  ripc->add_option("--seed", rip.seed, "RNG seed");
  ripc->add_option("--randomized", rip.randomized, "Monte Carlo lower bound with this many supports");

  std::string report;
  auto* verify = app.add_subcommand("verify-bounds", "Check polynomial and harmonic growth bounds");
  verify->add_option("--report", report, "Report path (default: stdout)");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("noise-sweep", "Median recovery error against noise level");
  sweep->add_option("--degree", sw.degree, "Degree bound D")->check(CLI::PositiveNumber);
  sweep->add_option("--sparsity", sw.sparsity, "Sparsity s");
  sweep->add_option("--samples", sw.samples, "Number of samples m")->check(CLI::PositiveNumber);
  sweep->add_option("--eps-list", sw.eps_list, "Comma-separated noise levels");
  sweep->add_option("--trials", sw.trials, "Trials per level")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sw.seed, "RNG seed");
  sweep->add_option("--measure", sw.measure, "product | surface")
      ->check(CLI::IsMember({"product", "surface"}));
  sweep->add_option("--model", sw.model, "sparse | compressible")
      ->check(CLI::IsMember({"sparse", "compressible"}));
  sweep->add_option("--threads", sw.threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*recover) return run_recover(rec);
    if (*phase) return run_phase(ph, t_opt->count() > 0, s_opt->count() > 0, m_opt->count() > 0);
    if (*ripc) return run_rip(rip);
    if (*verify) return sphcs::verify_bounds(report);
    if (*sweep) return run_sweep(sw);
  } catch (const sphcs::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const sphcs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
