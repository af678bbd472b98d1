#include <doctest.h>

#include "approx.hpp"

#include <cmath>

#include "lrm/dynamics.hpp"
#include "lrm/errors.hpp"
#include "oracles.hpp"

using namespace lrm;

namespace {

AnyonConfig random_config(const TorusGeometry& g, Rng& rng, int flips) {
  AnyonConfig c = AnyonConfig::vacuum(g);
  for (int i = 0; i < flips; ++i) c.flip_bond(uniform_index(rng, g.num_bonds()));
  return c;
}

std::vector<int> W_of(const AnyonConfig& c) {
  std::vector<int> W(c.geometry().num_plaquettes());
  for (PlaquetteId p = 0; p < W.size(); ++p) W[p] = c.W(p);
  return W;
}

double powerlaw_oracle_energy(const AnyonConfig& c, double A, double j0) {
  const int L = c.geometry().size();
  return oracle::energy(W_of(c), j0, [&](int p, int q) {
    return A * A / oracle::torus_distance(p % L, p / L, q % L, q / L, L);
  });
}

ThermalParams params(double beta, double t_max) {
  ThermalParams p;
  p.beta = beta;
  p.t_max = t_max;
  return p;
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("thermal parameter validation") {
    ThermalParams p = params(1.0, 10.0);
    CHECK_NOTHROW(p.validate());
    p.checkpoints = {1.0, 1.0};
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p.checkpoints = {1.0, 11.0};
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = params(-1.0, 1.0);
    CHECK_THROWS_AS(p.validate(), ValidationError);
    CHECK(acceptance_rule_from_string("glauber") == AcceptanceRule::glauber);
    CHECK_THROWS_AS(acceptance_rule_from_string("heatbath"), ValidationError);
  }

  TEST_CASE("acceptance rules satisfy detailed balance") {
    for (auto rule : {AcceptanceRule::metropolis, AcceptanceRule::glauber})
      for (double beta : {0.0, 0.3, 1.0, 2.5})
        for (double dE : {0.0, 0.5, 2.0, 4.0, 7.5}) {
          const double fwd = acceptance_probability(rule, beta, dE), back = acceptance_probability(rule, beta, -dE);
          CHECK(fwd / back == approx(std::exp(-beta * dE)).epsilon(1e-13));
        }
  }

  TEST_CASE("toric energies") {
    const TorusGeometry g(4);
    const auto k = build_kernel_bare(1.0, g);
    const AnyonConfig vac = AnyonConfig::vacuum(g);
    CHECK(total_energy(vac, k) == -16.0);
    const AnyonConfig pair = apply_bond_flip(vac, 3);
    CHECK(total_energy(pair, k) - total_energy(vac, k) == approx(4.0));
    const CouplingMatrix m(k);
    const EnergyState s = make_energy_state(vac, m);
    for (BondId b = 0; b < g.num_bonds(); ++b) CHECK(flip_delta(vac, s, m, b) == 4.0);
    CHECK_THROWS_AS(total_energy(AnyonConfig::vacuum(TorusGeometry(6)), k), ValidationError);
  }

  TEST_CASE("total energy matches the brute-force double loop") {
    Rng rng(31);
    const TorusGeometry g(6);
    const auto k = build_kernel_powerlaw(0.8, 1.0, g).with_j0(0.6);
    const CouplingMatrix m(k);
    for (int trial = 0; trial < 40; ++trial) {
      const AnyonConfig c = random_config(g, rng, 1 + static_cast<int>(uniform_index(rng, 40)));
      const double ref = powerlaw_oracle_energy(c, 0.8, 0.6);
      CHECK(total_energy(c, k) == approx(ref).epsilon(1e-12));
      CHECK(total_energy(c, m) == approx(ref).epsilon(1e-12));
      CHECK(make_energy_state(c, m).energy == approx(ref).epsilon(1e-12));
    }
  }

  TEST_CASE("property: flip_delta equals the from-scratch energy difference") {
    Rng rng(32);
    const TorusGeometry g(6);
    const auto k = build_kernel_powerlaw(1.0, 1.0, g).with_j0(1.0);
    const CouplingMatrix m(k);
    for (int trial = 0; trial < 300; ++trial) {
      const AnyonConfig c = random_config(g, rng, static_cast<int>(uniform_index(rng, 30)));
      const EnergyState s = make_energy_state(c, m);
      const BondId b = uniform_index(rng, g.num_bonds());
      const double exact = powerlaw_oracle_energy(apply_bond_flip(c, b), 1.0, 1.0) - powerlaw_oracle_energy(c, 1.0, 1.0);
      const double dm = flip_delta(c, s, m, b), dk = flip_delta(c, s, k, b);
      CHECK(std::abs(dm - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
      CHECK(dk == approx(dm).epsilon(1e-14));
      // The reverse move undoes the energy change.
      AnyonConfig after = c;
      EnergyState sa = s;
      commit_flip(after, sa, m, b, dm);
      CHECK(flip_delta(after, sa, m, b) == approx(-dm).epsilon(1e-12));
    }
  }

  TEST_CASE("energy bookkeeping over a million attempts") {
    const TorusGeometry g(6);
    const auto k = build_kernel_powerlaw(0.5, 1.0, g).with_j0(0.5);
    auto m = std::make_shared<const CouplingMatrix>(k);
    KmcSimulator sim(AnyonConfig::vacuum(g), m, params(0.05, 1e9), 99);
    sim.advance_attempts(1000000);
    CHECK(sim.accepted() > 10000);
    const EnergyState fresh = make_energy_state(sim.config(), *m);
    CHECK(std::abs(sim.energy() - fresh.energy) <= 1e-9 * std::abs(fresh.energy));
    for (std::size_t r = 0; r < fresh.field.size(); ++r)
      CHECK(sim.energy_state().field[r] == approx(fresh.field[r]).epsilon(1e-9));
  }

  TEST_CASE("zero temperature rejects every uphill move") {
    const TorusGeometry g(4);
    ThermalParams p = params(1e6, 100.0);
    const auto log = kmc_run(AnyonConfig::vacuum(g), build_kernel_bare(1.0, g), p, 5);
    CHECK(log.attempts > 1000);
    CHECK(log.accepted == 0);
  }

  TEST_CASE("gamma = 0 produces no events") {
    const TorusGeometry g(4);
    ThermalParams p = params(1.0, 100.0);
    p.gamma = 0.0;
    const auto log = kmc_run(AnyonConfig::vacuum(g), build_kernel_bare(1.0, g), p, 5);
    CHECK(log.attempts == 0);
    CHECK(log.t_end == 100.0);
  }

  TEST_CASE("reproducibility, replay, and parity") {
    const TorusGeometry g(6);
    const auto k = build_kernel_powerlaw(0.5, 1.0, g).with_j0(1.0);
    ThermalParams p = params(0.8, 50.0);
    p.checkpoints = {1.0, 5.0, 10.0, 25.0, 50.0};
    p.record_events = true;
    const auto a = kmc_run(AnyonConfig::vacuum(g), k, p, 123);
    const auto b = kmc_run(AnyonConfig::vacuum(g), k, p, 123);
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
      CHECK(a.events[i].t == b.events[i].t);
      CHECK(a.events[i].bond == b.events[i].bond);
      CHECK(a.events[i].dE == b.events[i].dE);
      CHECK(a.events[i].accepted == b.events[i].accepted);
      if (i) CHECK(a.events[i].t >= a.events[i - 1].t);
    }
    CHECK(a.final_energy == b.final_energy);
    const auto digests = replay_digests(AnyonConfig::vacuum(g), a);
    for (std::size_t i = 0; i < a.checkpoints.size(); ++i) {
      CHECK(digests[i] == a.checkpoints[i].digest);
      CHECK(a.checkpoints[i].anyons % 2 == 0);
    }
    const auto other = kmc_run(AnyonConfig::vacuum(g), k, p, 124);
    CHECK((other.events.size() != a.events.size() || other.events[0].t != a.events[0].t));
  }

  TEST_CASE("checkpoints do not perturb the trajectory") {
    const TorusGeometry g(4);
    const auto k = build_kernel_bare(1.0, g);
    ThermalParams p = params(0.5, 40.0);
    const auto plain = kmc_run(AnyonConfig::vacuum(g), k, p, 8);
    p.checkpoints = {0.5, 3.0, 3.1, 17.0};
    const auto dense = kmc_run(AnyonConfig::vacuum(g), k, p, 8);
    CHECK(plain.attempts == dense.attempts);
    CHECK(plain.final_energy == dense.final_energy);
    CHECK(plain.anyon_time_integral == approx(dense.anyon_time_integral).epsilon(1e-12));
  }

  TEST_CASE("L = 2 occupancy approaches Gibbs (short run)") {
    const TorusGeometry g(2);
    auto m = std::make_shared<const CouplingMatrix>(build_kernel_bare(1.0, g));
    for (auto rule : {AcceptanceRule::metropolis, AcceptanceRule::glauber}) {
      ThermalParams p = params(1.0, 1e9);
      p.rule = rule;
      KmcSimulator sim(AnyonConfig::vacuum(g), m, p, 17);
      sim.track_state_occupancy(true);
      sim.advance_attempts(1000000);
      const auto& occ = sim.state_occupancy();
      double z = 0.0, total = 0.0;
      std::vector<double> gibbs(16, 0.0);
      for (int s = 0; s < 16; ++s) {
        if (__builtin_popcount(s) % 2) continue;
        z += gibbs[s] = std::exp(-2.0 * __builtin_popcount(s));
        total += occ[s];
      }
      double tv = 0.0;
      for (int s = 0; s < 16; ++s) tv += std::abs(occ[s] / total - gibbs[s] / z);
      CHECK(0.5 * tv < 0.01);
    }
  }
}
