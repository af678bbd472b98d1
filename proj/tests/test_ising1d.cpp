#include <doctest.h>

#include "approx.hpp"

#include <cmath>

#include "lrm/errors.hpp"
#include "lrm/ising1d.hpp"

using namespace lrm;

TEST_SUITE("ising1d") {
  TEST_CASE("chain construction and validation") {
    const auto alt = alternating_chain(8, 0.5, 1.5, 1.0);
    CHECK(alt.j_bar() == approx(1.0));
    CHECK(alt.J[0] == 0.5);
    CHECK(alt.J[1] == 1.5);
    CHECK_THROWS_AS(alternating_chain(7, 0.5, 1.5, 1.0), ValidationError);
    CHECK_THROWS_AS(uniform_chain(8, 0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(uniform_chain(8, 1.0, -1.0), ValidationError);
    CHECK_THROWS_AS(ising_memory_time(uniform_chain(8, 2.0, 2.5), 8, 1), ValidationError);
  }

  TEST_CASE("energies on the ring") {
    const auto c = uniform_chain(4, 1.0, 1.0);
    CHECK(ising_energy(c, 0) == -4.0);
    CHECK(ising_energy(c, 0b0001) == 0.0);
    CHECK(ising_energy(c, 0b0101) == 4.0);
  }

  TEST_CASE("Glauber generator satisfies detailed balance exactly") {
    for (const auto& chain : {uniform_chain(4, 1.0, 1.0), alternating_chain(4, 0.5, 1.5, 1.3),
                              IsingChain{{0.3, 1.1, 0.7, 1.9}, 0.8}}) {
      const auto q = glauber_generator(chain);
      const std::size_t n = 16;
      for (std::size_t s = 0; s < n; ++s) {
        double row = 0.0;
        for (std::size_t t = 0; t < n; ++t) row += q[s * n + t];
        CHECK(std::abs(row) < 1e-14);
      }
      const auto gibbs = ising_gibbs(chain);
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t i = 0; i < 4; ++i) {
          const std::size_t t = s ^ (std::size_t{1} << i);
          CHECK(gibbs[s] * q[s * n + t] == approx(gibbs[t] * q[t * n + s]).epsilon(1e-13));
        }
      CHECK(total_variation(glauber_stationary(chain), gibbs) < 1e-10);
    }
  }

  TEST_CASE("infinite temperature loses the magnetization in O(1) time") {
    const auto stats = ising_memory_time(uniform_chain(64, 1.0, 0.0), 32, 5);
    CHECK(stats.censored == 0);
    CHECK(stats.median < 10.0);
    CHECK(stats.median_ci.lo <= stats.median);
    CHECK(stats.median <= stats.median_ci.hi);
  }

  TEST_CASE("first-passage times are reproducible and seed-dependent") {
    const auto chain = uniform_chain(32, 1.0, 1.0);
    CHECK(ising_first_passage(chain, 1e6, 77) == ising_first_passage(chain, 1e6, 77));
    CHECK(ising_first_passage(chain, 1e6, 77) != ising_first_passage(chain, 1e6, 78));
    IsingRunOptions threaded;
    threaded.threads = 4;
    const auto a = ising_memory_time(chain, 16, 9), b = ising_memory_time(chain, 16, 9, threaded);
    CHECK(a.taus == b.taus);
  }

  TEST_CASE("all-censored runs raise horizon exceeded") {
    IsingRunOptions opt;
    opt.t_cap = 1.0;
    try {
      ising_memory_time(uniform_chain(64, 1.0, 2.5), 8, 1, opt);
      FAIL("expected HorizonExceeded");
    } catch (const HorizonExceeded& e) {
      CHECK(e.censored() == 8);
    }
  }

  TEST_CASE("first-passage law is roughly exponential at low temperature") {
    const auto stats = ising_memory_time(uniform_chain(64, 1.0, 2.0), 64, 21);
    CHECK(stats.mean / stats.median >= 1.2);
    CHECK(stats.mean / stats.median <= 1.8);
  }

  TEST_CASE("uniform chain Arrhenius slope equals 2J" * doctest::may_fail()) {
    std::vector<double> betas{1.0, 1.5, 2.0, 2.5};
    std::vector<std::vector<double>> samples;
    for (double b : betas) samples.push_back(ising_memory_time(uniform_chain(64, 1.0, b), 64, 3).taus);
    const auto est = log_median_slope(betas, samples);
    MESSAGE("fitted slope " << est.fit.slope);
    CHECK(est.fit.slope == approx(2.0).epsilon(0.10));
  }
}
