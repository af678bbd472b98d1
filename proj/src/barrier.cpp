#include "lrm/barrier.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "lrm/dynamics.hpp"
#include "lrm/errors.hpp"

namespace lrm {

namespace {

// Energy of every occupation bitmask relative to the vacuum.
std::vector<double> mask_energies(const InteractionKernel& kernel) {
  const TorusGeometry& g = kernel.geometry();
  const std::size_t n = g.num_plaquettes();
  const std::vector<double> J = kernel.dense_matrix();
  const std::size_t count = std::size_t{1} << n;
  std::vector<double> e(count);
  std::vector<int> w(n);
  for (std::size_t mask = 0; mask < count; ++mask) {
    double onsite = 0.0, pair = 0.0;
    for (std::size_t r = 0; r < n; ++r) w[r] = (mask >> r & 1) ? -1 : 1;
    for (std::size_t r = 0; r < n; ++r) {
      onsite += w[r];
      for (std::size_t q = r + 1; q < n; ++q) pair += J[r * n + q] * w[r] * w[q];
    }
    e[mask] = -kernel.j0() * onsite - pair;
  }
  const double vacuum = e[0];
  for (auto& v : e) v -= vacuum;
  return e;
}

}  // namespace

BarrierResult energy_barrier(const InteractionKernel& kernel, std::span<const LogicalClass> targets) {
  const TorusGeometry& g = kernel.geometry();
  if (g.size() > kMaxBarrierSize) throw ValidationError("state space too large: energy_barrier needs L <= 4");
  if (targets.empty()) throw ValidationError("energy_barrier needs at least one target class");
  bool target_class[4] = {false, false, false, false};
  for (const auto& c : targets) {
    if (c.trivial()) throw ValidationError("energy_barrier targets must be nontrivial classes");
    target_class[c.index()] = true;
  }

  const std::size_t n = g.num_plaquettes();
  const std::vector<double> cost = mask_energies(kernel);
  // State id = mask * 4 + winding index.
  const std::size_t states = (std::size_t{1} << n) * 4;
  std::vector<double> height(states, std::numeric_limits<double>::infinity());
  std::vector<std::uint32_t> parent(states, std::numeric_limits<std::uint32_t>::max());
  std::vector<std::uint8_t> parent_bond(states, 0);
  std::vector<std::uint8_t> settled(states, 0);

  // Bond endpoints as bit masks, plus the winding toggle each bond causes.
  std::vector<std::size_t> bond_mask(g.num_bonds());
  std::vector<int> bond_wind(g.num_bonds());
  for (BondId b = 0; b < g.num_bonds(); ++b) {
    const auto [p, q] = g.bond_ends(b);
    bond_mask[b] = (std::size_t{1} << p) ^ (std::size_t{1} << q);
    const int cut = g.cut_crossed(b);
    bond_wind[b] = cut < 0 ? 0 : (cut == 0 ? 1 : 2);
  }

  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  height[0] = 0.0;
  queue.emplace(0.0, 0u);
  BarrierResult result;
  std::uint32_t goal = std::numeric_limits<std::uint32_t>::max();
  while (!queue.empty()) {
    const auto [h, s] = queue.top();
    queue.pop();
    if (settled[s]) continue;
    settled[s] = 1;
    ++result.states_settled;
    const std::size_t mask = s >> 2;
    const int wind = static_cast<int>(s & 3);
    if (mask == 0 && target_class[wind]) {
      goal = s;
      break;
    }
    for (BondId b = 0; b < g.num_bonds(); ++b) {
      const std::size_t m2 = mask ^ bond_mask[b];
      const std::uint32_t t = static_cast<std::uint32_t>((m2 << 2) | static_cast<std::size_t>(wind ^ bond_wind[b]));
      if (settled[t]) continue;
      const double ht = std::max(h, cost[m2]);
      if (ht < height[t]) {
        height[t] = ht;
        parent[t] = s;
        parent_bond[t] = static_cast<std::uint8_t>(b);
        queue.emplace(ht, t);
      }
    }
  }
  if (goal == std::numeric_limits<std::uint32_t>::max())
    throw ValidationError("no target class is reachable");  // unreachable on a torus
  result.barrier = height[goal];
  result.reached = LogicalClass{static_cast<std::uint8_t>(goal & 1), static_cast<std::uint8_t>((goal >> 1) & 1)};
  for (std::uint32_t s = goal; s != 0; s = parent[s]) result.witness.push_back(parent_bond[s]);
  std::reverse(result.witness.begin(), result.witness.end());
  return result;
}

BarrierResult energy_barrier(const InteractionKernel& kernel) {
  const LogicalClass all[] = {{1, 0}, {0, 1}, {1, 1}};
  return energy_barrier(kernel, all);
}

double sequence_height(const InteractionKernel& kernel, std::span<const BondId> flips) {
  AnyonConfig config = AnyonConfig::vacuum(kernel.geometry());
  const double vacuum = total_energy(config, kernel);
  double top = 0.0;
  for (BondId b : flips) {
    config.flip_bond(b);
    top = std::max(top, total_energy(config, kernel) - vacuum);
  }
  return top;
}

std::vector<BondId> straight_sweep(const TorusGeometry& g) {
  std::vector<BondId> out;
  for (int x = 0; x < g.size(); ++x) out.push_back(g.horizontal_bond(x, 0));
  return out;
}

}  // namespace lrm
