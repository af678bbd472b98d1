#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lrm/kernels.hpp"
#include "lrm/lattice.hpp"
#include "lrm/rng.hpp"

namespace lrm {

enum class AcceptanceRule { metropolis, glauber };

std::string to_string(AcceptanceRule r);
AcceptanceRule acceptance_rule_from_string(const std::string& s);

// Acceptance probability for an energy change dE at inverse temperature beta.
double acceptance_probability(AcceptanceRule rule, double beta, double dE);

struct ThermalParams {
  double beta = 1.0;
  double gamma = 1.0;  // attempts per bond per unit time
  AcceptanceRule rule = AcceptanceRule::metropolis;
  double t_max = 1.0;
  std::vector<double> checkpoints;  // strictly increasing, <= t_max
  bool record_events = false;

  void validate() const;
};

/// Dense row-major L^2 x L^2 coupling matrix shared by every trajectory on a
/// kernel. Rows are contiguous so local-field updates are straight axpys.
class CouplingMatrix {
 public:
  explicit CouplingMatrix(const InteractionKernel& kernel);

  const TorusGeometry& geometry() const { return geometry_; }
  double j0() const { return j0_; }
  bool has_pair_terms() const { return has_pairs_; }
  std::size_t size() const { return n_; }
  std::span<const double> row(PlaquetteId p) const { return {data_.data() + p * n_, n_}; }
  double operator()(PlaquetteId p, PlaquetteId q) const { return data_[p * n_ + q]; }

 private:
  TorusGeometry geometry_;
  double j0_;
  bool has_pairs_;
  std::size_t n_;
  std::vector<double> data_;
};

struct EnergyState {
  double energy = 0.0;
  std::vector<double> field;  // h_r = sum_{r' != r} J(r, r') W_r'
};

/// -J0 sum_r W_r - (1/2) sum_{r != r'} J(r, r') W_r W_r'.
double total_energy(const AnyonConfig& config, const InteractionKernel& kernel);
double total_energy(const AnyonConfig& config, const CouplingMatrix& coupling);

EnergyState make_energy_state(const AnyonConfig& config, const CouplingMatrix& coupling);

// Exact energy change of flipping bond b (toggling both adjacent plaquettes).
double flip_delta(const AnyonConfig& config, const EnergyState& state, const CouplingMatrix& coupling,
                  BondId b);
double flip_delta(const AnyonConfig& config, const EnergyState& state, const InteractionKernel& kernel,
                  BondId b);

// Applies an accepted flip to config and state (fields updated in O(L^2)).
void commit_flip(AnyonConfig& config, EnergyState& state, const CouplingMatrix& coupling, BondId b,
                 double dE);

struct KmcEvent {
  double t;
  BondId bond;
  double dE;
  bool accepted;
};

struct Checkpoint {
  double t;
  std::uint64_t digest;
  std::size_t anyons;
};

struct TrajectoryLog {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::vector<KmcEvent> events;  // filled when ThermalParams::record_events
  std::vector<Checkpoint> checkpoints;
  double t_end = 0.0;
  std::uint64_t attempts = 0;
  std::uint64_t accepted = 0;
  double final_energy = 0.0;
  // Time integral of the anyon count over [0, t_end].
  double anyon_time_integral = 0.0;
};

/// Rejection kinetic Monte Carlo. The next event time is drawn ahead and held
/// back when it lies past the requested horizon, so the trajectory does not
/// depend on where the caller stops to look at it.
class KmcSimulator {
 public:
  KmcSimulator(AnyonConfig initial, std::shared_ptr<const CouplingMatrix> coupling,
               const ThermalParams& params, std::uint64_t seed);

  // Processes every event with time <= t.
  void advance_to(double t);
  // Processes a fixed number of attempts regardless of time.
  void advance_attempts(std::uint64_t attempts);

  double time() const { return now_; }
  const AnyonConfig& config() const { return config_; }
  const EnergyState& energy_state() const { return state_; }
  double energy() const { return state_.energy; }
  std::uint64_t attempts() const { return attempts_; }
  std::uint64_t accepted() const { return accepted_; }
  double anyon_time_integral() const { return anyon_integral_; }
  // Time-weighted residence per state, keyed by occupation bitmask (L^2 <= 16).
  void track_state_occupancy(bool on);
  const std::vector<double>& state_occupancy() const { return occupancy_; }

  void set_event_log(std::vector<KmcEvent>* log) { event_log_ = log; }

 private:
  void step();
  void accumulate(double until);
  std::uint64_t occupancy_key() const;

  AnyonConfig config_;
  std::shared_ptr<const CouplingMatrix> coupling_;
  ThermalParams params_;
  EnergyState state_;
  Rng rng_;
  double total_rate_;
  double now_ = 0.0;
  double next_event_ = 0.0;
  std::uint64_t attempts_ = 0;
  std::uint64_t accepted_ = 0;
  double anyon_integral_ = 0.0;
  bool track_occupancy_ = false;
  std::vector<double> occupancy_;
  std::vector<KmcEvent>* event_log_ = nullptr;
};

TrajectoryLog kmc_run(const AnyonConfig& initial, const InteractionKernel& kernel,
                      const ThermalParams& params, std::uint64_t seed);
TrajectoryLog kmc_run(const AnyonConfig& initial, std::shared_ptr<const CouplingMatrix> coupling,
                      const ThermalParams& params, std::uint64_t seed);

// Re-applies the accepted events of a log and returns the digests seen at
// each checkpoint time.
std::vector<std::uint64_t> replay_digests(const AnyonConfig& initial, const TrajectoryLog& log);

}  // namespace lrm
