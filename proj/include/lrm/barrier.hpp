#pragma once

#include <span>
#include <vector>

#include "lrm/kernels.hpp"
#include "lrm/lattice.hpp"

namespace lrm {

inline constexpr int kMaxBarrierSize = 4;

struct BarrierResult {
  double barrier = 0.0;
  LogicalClass reached;            // target class attained by the optimal sequence
  std::vector<BondId> witness;     // bond flips of one optimal sequence
  std::size_t states_settled = 0;
};

/// Exact energy barrier: the minimax height E(state) - E(vacuum) over all
/// single-bond-flip sequences leading from (vacuum, trivial class) to
/// (vacuum, c) for some c in targets. Searches the full (occupation, winding)
/// state graph, so L is limited to kMaxBarrierSize.
BarrierResult energy_barrier(const InteractionKernel& kernel, std::span<const LogicalClass> targets);
// All three nontrivial classes.
BarrierResult energy_barrier(const InteractionKernel& kernel);

// Height (relative to vacuum) reached along an explicit flip sequence from the vacuum.
double sequence_height(const InteractionKernel& kernel, std::span<const BondId> flips);

// Create a pair on row 0, drag one anyon around the horizontal cycle, annihilate.
std::vector<BondId> straight_sweep(const TorusGeometry& g);

}  // namespace lrm
