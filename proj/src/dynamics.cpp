#include "lrm/dynamics.hpp"

#include <cmath>
#include <limits>

#include "lrm/errors.hpp"
#include "lrm/simd.hpp"

namespace lrm {

std::string to_string(AcceptanceRule r) {
  return r == AcceptanceRule::glauber ? "glauber" : "metropolis";
}

AcceptanceRule acceptance_rule_from_string(const std::string& s) {
  if (s == "metropolis") return AcceptanceRule::metropolis;
  if (s == "glauber") return AcceptanceRule::glauber;
  throw ValidationError("unknown acceptance rule '" + s + "'");
}

double acceptance_probability(AcceptanceRule rule, double beta, double dE) {
  if (rule == AcceptanceRule::metropolis) return dE <= 0.0 ? 1.0 : std::exp(-beta * dE);
  return 1.0 / (1.0 + std::exp(beta * dE));
}

void ThermalParams::validate() const {
  if (!(beta >= 0.0)) throw ValidationError("beta must be nonnegative");
  if (!(gamma >= 0.0)) throw ValidationError("attempt rate must be nonnegative");
  if (!(t_max >= 0.0)) throw ValidationError("t_max must be nonnegative");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (i > 0 && !(checkpoints[i] > checkpoints[i - 1]))
      throw ValidationError("checkpoints must be strictly increasing");
    if (checkpoints[i] > t_max) throw ValidationError("checkpoints must not exceed t_max");
  }
}

CouplingMatrix::CouplingMatrix(const InteractionKernel& kernel)
    : geometry_(kernel.geometry()),
      j0_(kernel.j0()),
      has_pairs_(kernel.has_pair_terms()),
      n_(kernel.geometry().num_plaquettes()),
      data_(kernel.dense_matrix()) {}

double total_energy(const AnyonConfig& config, const CouplingMatrix& coupling) {
  if (!(config.geometry() == coupling.geometry())) throw ValidationError("geometry mismatch");
  const std::size_t n = coupling.size();
  double onsite = 0.0, pair = 0.0;
  for (PlaquetteId r = 0; r < n; ++r) {
    onsite += config.W(r);
    if (!coupling.has_pair_terms()) continue;
    double h = 0.0;
    const auto row = coupling.row(r);
    for (PlaquetteId q = 0; q < n; ++q) h += row[q] * config.W(q);
    pair += config.W(r) * h;
  }
  return -coupling.j0() * onsite - 0.5 * pair;
}

double total_energy(const AnyonConfig& config, const InteractionKernel& kernel) {
  if (!(config.geometry() == kernel.geometry())) throw ValidationError("geometry mismatch");
  const std::size_t n = kernel.geometry().num_plaquettes();
  double onsite = 0.0, pair = 0.0;
  for (PlaquetteId r = 0; r < n; ++r) {
    onsite += config.W(r);
    if (!kernel.has_pair_terms()) continue;
    double h = 0.0;
    for (PlaquetteId q = 0; q < n; ++q) h += kernel.coupling(r, q) * config.W(q);
    pair += config.W(r) * h;
  }
  return -kernel.j0() * onsite - 0.5 * pair;
}

EnergyState make_energy_state(const AnyonConfig& config, const CouplingMatrix& coupling) {
  if (!(config.geometry() == coupling.geometry())) throw ValidationError("geometry mismatch");
  const std::size_t n = coupling.size();
  EnergyState s;
  s.field.assign(n, 0.0);
  if (coupling.has_pair_terms()) {
    std::vector<double> w(n);
    for (PlaquetteId q = 0; q < n; ++q) w[q] = config.W(q);
    for (PlaquetteId r = 0; r < n; ++r) s.field[r] = simd::dot(coupling.row(r), w);
  }
  double onsite = 0.0, pair = 0.0;
  for (PlaquetteId r = 0; r < n; ++r) {
    onsite += config.W(r);
    pair += config.W(r) * s.field[r];
  }
  s.energy = -coupling.j0() * onsite - 0.5 * pair;
  return s;
}

double flip_delta(const AnyonConfig& config, const EnergyState& state, const CouplingMatrix& coupling,
                  BondId b) {
  const auto [p, q] = config.geometry().bond_ends(b);
  const double wp = config.W(p), wq = config.W(q);
  const double onsite = 2.0 * coupling.j0() * (wp + wq);
  if (!coupling.has_pair_terms()) return onsite;
  const double jpq = coupling(p, q);
  return onsite + 2.0 * wp * (state.field[p] - jpq * wq) + 2.0 * wq * (state.field[q] - jpq * wp);
}

double flip_delta(const AnyonConfig& config, const EnergyState& state, const InteractionKernel& kernel,
                  BondId b) {
  const auto [p, q] = config.geometry().bond_ends(b);
  const double wp = config.W(p), wq = config.W(q);
  const double jpq = kernel.coupling(p, q);
  return 2.0 * kernel.j0() * (wp + wq) + 2.0 * wp * (state.field[p] - jpq * wq) +
         2.0 * wq * (state.field[q] - jpq * wp);
}

void commit_flip(AnyonConfig& config, EnergyState& state, const CouplingMatrix& coupling, BondId b,
                 double dE) {
  const auto [p, q] = config.geometry().bond_ends(b);
  if (coupling.has_pair_terms()) {
    simd::axpy(-2.0 * config.W(p), coupling.row(p), state.field);
    simd::axpy(-2.0 * config.W(q), coupling.row(q), state.field);
  }
  config.flip_bond(b);
  state.energy += dE;
}

KmcSimulator::KmcSimulator(AnyonConfig initial, std::shared_ptr<const CouplingMatrix> coupling,
                           const ThermalParams& params, std::uint64_t seed)
    : config_(std::move(initial)),
      coupling_(std::move(coupling)),
      params_(params),
      rng_(seed) {
  params_.validate();
  if (!coupling_) throw ValidationError("kmc: missing coupling matrix");
  state_ = make_energy_state(config_, *coupling_);
  total_rate_ = params_.gamma * static_cast<double>(config_.geometry().num_bonds());
  next_event_ = total_rate_ > 0.0 ? exponential(rng_, total_rate_)
                                  : std::numeric_limits<double>::infinity();
}

void KmcSimulator::track_state_occupancy(bool on) {
  if (on && config_.geometry().num_plaquettes() > 16)
    throw ValidationError("state occupancy tracking needs L^2 <= 16");
  track_occupancy_ = on;
  occupancy_.assign(on ? (std::size_t{1} << config_.geometry().num_plaquettes()) : 0, 0.0);
}

std::uint64_t KmcSimulator::occupancy_key() const {
  std::uint64_t key = 0;
  const auto occ = config_.occupations();
  for (std::size_t i = 0; i < occ.size(); ++i) key |= static_cast<std::uint64_t>(occ[i]) << i;
  return key;
}

void KmcSimulator::accumulate(double until) {
  const double dt = until - now_;
  if (dt <= 0.0) return;
  anyon_integral_ += dt * static_cast<double>(config_.anyon_count());
  if (track_occupancy_) occupancy_[occupancy_key()] += dt;
  now_ = until;
}

void KmcSimulator::step() {
  accumulate(next_event_);
  now_ = next_event_;
  const BondId b = uniform_index(rng_, config_.geometry().num_bonds());
  const double dE = flip_delta(config_, state_, *coupling_, b);
  const double u = uniform01(rng_);
  const bool accept = u < acceptance_probability(params_.rule, params_.beta, dE);
  if (accept) {
    commit_flip(config_, state_, *coupling_, b, dE);
    ++accepted_;
  }
  ++attempts_;
  if (event_log_) event_log_->push_back({now_, b, dE, accept});
  next_event_ = now_ + exponential(rng_, total_rate_);
}

void KmcSimulator::advance_to(double t) {
  while (next_event_ <= t) step();
  accumulate(t);
}

void KmcSimulator::advance_attempts(std::uint64_t attempts) {
  if (total_rate_ <= 0.0) return;
  for (std::uint64_t i = 0; i < attempts; ++i) step();
}

TrajectoryLog kmc_run(const AnyonConfig& initial, std::shared_ptr<const CouplingMatrix> coupling,
                      const ThermalParams& params, std::uint64_t seed) {
  TrajectoryLog log;
  log.seed = seed;
  KmcSimulator sim(initial, std::move(coupling), params, seed);
  if (params.record_events) sim.set_event_log(&log.events);
  for (double t : params.checkpoints) {
    sim.advance_to(t);
    log.checkpoints.push_back({t, sim.config().digest(), sim.config().anyon_count()});
  }
  sim.advance_to(params.t_max);
  log.t_end = sim.time();
  log.attempts = sim.attempts();
  log.accepted = sim.accepted();
  log.final_energy = sim.energy();
  log.anyon_time_integral = sim.anyon_time_integral();
  return log;
}

TrajectoryLog kmc_run(const AnyonConfig& initial, const InteractionKernel& kernel,
                      const ThermalParams& params, std::uint64_t seed) {
  return kmc_run(initial, std::make_shared<const CouplingMatrix>(kernel), params, seed);
}

std::vector<std::uint64_t> replay_digests(const AnyonConfig& initial, const TrajectoryLog& log) {
  AnyonConfig config = initial;
  std::vector<std::uint64_t> out;
  std::size_t e = 0;
  for (const Checkpoint& c : log.checkpoints) {
    for (; e < log.events.size() && log.events[e].t <= c.t; ++e)
      if (log.events[e].accepted) config.flip_bond(log.events[e].bond);
    out.push_back(config.digest());
  }
  return out;
}

}  // namespace lrm
