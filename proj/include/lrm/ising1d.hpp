#pragma once

#include <cstdint>
#include <vector>

#include "lrm/stats.hpp"

namespace lrm {

/// Ring of L Ising spins with H = -sum_i J_i s_i s_{i+1}, s_L = s_0.
struct IsingChain {
  std::vector<double> J;  // J[i] couples spins i and i+1
  double beta = 1.0;

  std::size_t size() const { return J.size(); }
  double j_min() const;
  double j_max() const;
  // (J_min + J_max) / 2
  double j_bar() const;
  void validate() const;
};

IsingChain uniform_chain(std::size_t L, double J, double beta);
// Couplings alternate j_a, j_b around the ring; L must be even.
IsingChain alternating_chain(std::size_t L, double j_a, double j_b, double beta);

// Energy of a spin configuration given as a bitmask (bit i set means s_i = -1).
double ising_energy(const IsingChain& chain, std::uint64_t state);

// Glauber rate for flipping spin i: 1 / (1 + exp(beta dE)).
double glauber_rate(const IsingChain& chain, std::uint64_t state, std::size_t i);

/// One first-passage trial from the all-up state: continuous-time Glauber
/// dynamics with unit attempt rate per spin until M <= 0. Returns kCensored
/// when t_cap is reached first.
double ising_first_passage(const IsingChain& chain, double t_cap, std::uint64_t seed);

struct IsingRunOptions {
  double t_cap = 1e6;
  unsigned threads = 1;
  std::size_t bootstrap_resamples = 2000;
};

struct IsingMemoryStats {
  std::vector<double> taus;       // per trial, kCensored when capped
  std::vector<std::uint64_t> seeds;
  double median = 0.0;
  Interval median_ci;
  double mean = 0.0;              // censored trials enter at t_cap
  Interval mean_ci;
  std::size_t censored = 0;
};

/// Trials use seeds derive_seed(seed, L, trial). Throws HorizonExceeded when
/// the median itself is censored, and ValidationError when beta J_max > 4.
IsingMemoryStats ising_memory_time(const IsingChain& chain, std::size_t trials, std::uint64_t seed,
                                   const IsingRunOptions& options = {});

// Dense continuous-time generator Q (row-major 2^L x 2^L, rows sum to zero). L <= 12.
std::vector<double> glauber_generator(const IsingChain& chain);
// Stationary distribution of the generator (null vector of Q^T, normalized).
std::vector<double> glauber_stationary(const IsingChain& chain);
std::vector<double> ising_gibbs(const IsingChain& chain);
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace lrm
