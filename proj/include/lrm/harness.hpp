#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lrm/dynamics.hpp"
#include "lrm/io.hpp"
#include "lrm/kernels.hpp"
#include "lrm/stats.hpp"

namespace lrm {

struct KernelSpec {
  KernelFamily family = KernelFamily::bare;
  double j0 = 1.0;
  double A = 0.0;
  double alpha = 1.0;
  double epsilon = 0.0;
  double k = 1.0;
  int box = 0;  // 0: smallest power of two >= 4 L
  double j_min = 1.0, j_max = 1.0;
  std::uint64_t seed = 0;

  InteractionKernel build(const TorusGeometry& g) const;
  void validate() const;
};

Json to_json(const KernelSpec& k);
KernelSpec kernel_spec_from_json(const Json& j);

struct CellSpec {
  std::size_t index = 0;
  int L = 0;
  double beta = 0.0;
};

struct ExperimentSpec {
  KernelSpec kernel;
  std::vector<int> L;
  std::vector<double> beta;
  double gamma = 1.0;
  AcceptanceRule rule = AcceptanceRule::metropolis;
  double t0 = 1.0;
  double checkpoint_ratio = 2.0;  // t_k = t0 * ratio^k
  double t_max = 1e4;
  std::size_t trials = 64;
  std::uint64_t master_seed = 1;
  std::string output_dir = "results";
  unsigned threads = 0;

  void validate() const;
  std::vector<double> checkpoints() const;
  // Cells in L-major order: index = iL * |beta| + ibeta.
  std::vector<CellSpec> cells() const;
  std::uint64_t trial_seed(std::size_t cell, std::size_t trial) const;
};

Json to_json(const ExperimentSpec& s);
// Accepts a bare spec or a manifest carrying one under "spec".
ExperimentSpec experiment_spec_from_json(const Json& j);

struct CheckpointVerdict {
  double t;
  LogicalClass verdict;
  std::size_t anyons;
};

struct TrialResult {
  std::size_t cell = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double tau = kCensored;
  std::vector<CheckpointVerdict> verdicts;
  std::uint64_t attempts = 0;
  bool censored() const { return tau == kCensored; }
};

/// Starts from the vacuum and decodes at every checkpoint; tau is the first
/// checkpoint whose verdict is a nontrivial class.
TrialResult memory_time_trial(const ExperimentSpec& spec, const CellSpec& cell,
                              std::shared_ptr<const CouplingMatrix> coupling, std::uint64_t seed);
TrialResult memory_time_trial(const ExperimentSpec& spec, const CellSpec& cell, std::uint64_t seed);

struct CellSummary {
  CellSpec cell;
  std::size_t trials = 0;
  std::size_t censored = 0;
  double median = kCensored;
  Interval median_ci;
  double mean = 0.0;  // censored trials enter at t_max
  double censored_fraction() const { return trials ? double(censored) / double(trials) : 0.0; }
  bool median_censored() const { return median == kCensored; }
};

CellSummary summarize_cell(const CellSpec& cell, std::span<const TrialResult> trials, double t_max,
                           std::uint64_t seed);

struct SizeFit {
  LinearFit linear;       // ln tau = a + b L
  LinearFit logarithmic;  // ln tau = a + b ln L
  bool prefers_linear = true;
};

// Throws ValidationError("insufficient data") below three points.
SizeFit fit_tau_vs_size(std::span<const double> sizes, std::span<const double> taus);
LinearFit fit_tau_vs_beta(std::span<const double> betas, std::span<const double> taus);

struct ScalingResult {
  std::vector<CellSummary> cells;
  std::vector<std::size_t> excluded;  // cells whose median is censored
  std::vector<std::size_t> flagged;   // partially censored cells
  std::vector<std::pair<double, SizeFit>> size_fits;   // per beta
  std::vector<std::pair<int, LinearFit>> beta_fits;    // per L
};

/// Fits every beta group and L group with at least three uncensored cells.
/// Throws ValidationError("insufficient data") below three usable cells.
ScalingResult fit_scaling(std::span<const CellSummary> cells);

Json to_json(const ScalingResult& r);

struct ExperimentResult {
  std::vector<TrialResult> trials;  // sorted by (cell, trial)
  std::vector<CellSummary> cells;
  bool partial = false;
  std::vector<std::string> errors;
};

// Runs every trial without touching the filesystem.
ExperimentResult execute_experiment(const ExperimentSpec& spec);

// Text of trials.csv for a result set.
std::string trials_csv(const ExperimentSpec& spec, std::span<const TrialResult> trials);

/// execute_experiment plus persistence: trials.csv, cell_<i>.json, and
/// manifest.json. IO failures are collected per file; the manifest records
/// "partial": true and an IoError is thrown after it is written.
ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace lrm
