#include <doctest.h>

#include "approx.hpp"

#include "lrm/barrier.hpp"
#include "lrm/dynamics.hpp"
#include "lrm/errors.hpp"

using namespace lrm;

namespace {

double min_pair_cost(const InteractionKernel& k) {
  const AnyonConfig vac = AnyonConfig::vacuum(k.geometry());
  const CouplingMatrix m(k);
  const EnergyState s = make_energy_state(vac, m);
  double best = 1e300;
  for (BondId b = 0; b < k.geometry().num_bonds(); ++b) best = std::min(best, flip_delta(vac, s, m, b));
  return best;
}

}  // namespace

TEST_SUITE("barrier") {
  TEST_CASE("toric barrier is 4 J") {
    for (int L : {2, 3, 4})
      for (double J : {1.0, 0.5}) {
        const auto r = energy_barrier(build_kernel_bare(J, TorusGeometry(L)));
        CHECK(r.barrier == approx(4.0 * J));
        CHECK(!r.reached.trivial());
      }
  }

  TEST_CASE("zero kernel has zero barrier") {
    CHECK(energy_barrier(build_kernel_bare(0.0, TorusGeometry(4))).barrier == 0.0);
  }

  TEST_CASE("witness sequence reaches the reported class at the reported height") {
    const auto k = build_kernel_powerlaw(1.0, 1.0, TorusGeometry(3)).with_j0(0.5);
    const auto r = energy_barrier(k);
    CHECK(sequence_height(k, r.witness) == approx(r.barrier));
    AnyonConfig c = AnyonConfig::vacuum(k.geometry());
    for (BondId b : r.witness) c.flip_bond(b);
    CHECK(c.anyon_count() == 0);
    CHECK(c.winding() == r.reached);
  }

  TEST_CASE("alpha = 1 barrier grows from L = 3 to L = 4") {
    const double b3 = energy_barrier(build_kernel_powerlaw(1.0, 1.0, TorusGeometry(3))).barrier;
    const double b4 = energy_barrier(build_kernel_powerlaw(1.0, 1.0, TorusGeometry(4))).barrier;
    CHECK(b4 > b3);
  }

  TEST_CASE("barrier lies between the pair cost and the straight sweep") {
    for (int L : {3, 4}) {
      const TorusGeometry g(L);
      for (const auto& k : {build_kernel_powerlaw(1.0, 1.0, g).with_j0(1.0), build_kernel_rkky(1.0, 0.8, g).with_j0(2.0),
                            build_kernel_powerlaw(0.5, 2.0, g).with_j0(0.2)}) {
        const double b = energy_barrier(k).barrier;
        CHECK(b >= min_pair_cost(k) - 1e-12);
        CHECK(b <= sequence_height(k, straight_sweep(g)) + 1e-12);
      }
    }
  }

  TEST_CASE("targets are symmetric under the point group") {
    const auto k = build_kernel_powerlaw(1.0, 1.0, TorusGeometry(4)).with_j0(0.3);
    const LogicalClass h{1, 0}, v{0, 1};
    CHECK(energy_barrier(k, std::span(&h, 1)).barrier == approx(energy_barrier(k, std::span(&v, 1)).barrier));
  }

  TEST_CASE("adding a nonnegative kernel never lowers the barrier") {
    const TorusGeometry g(3);
    const auto base = build_kernel_rkky(1.0, 1.1, g).with_j0(1.0);
    const double b0 = energy_barrier(base).barrier;
    for (double A : {0.2, 0.5, 1.0}) {
      const auto more = base.plus(build_kernel_powerlaw(A, 1.5, g));
      CHECK(energy_barrier(more).barrier >= b0 - 1e-12);
    }
  }

  TEST_CASE("preconditions") {
    CHECK_THROWS_WITH_AS(energy_barrier(build_kernel_bare(1.0, TorusGeometry(6))),
                         doctest::Contains("state space too large"), ValidationError);
    const std::vector<LogicalClass> none;
    CHECK_THROWS_AS(energy_barrier(build_kernel_bare(1.0, TorusGeometry(3)), none), ValidationError);
  }
}
