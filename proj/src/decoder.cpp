#include "lrm/decoder.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <tuple>

#include "lrm/errors.hpp"

namespace lrm {

namespace {

using DistanceTable = std::vector<int>;

DistanceTable pair_distances(std::span<const PlaquetteId> anyons, const TorusGeometry& g) {
  const std::size_t k = anyons.size();
  DistanceTable d(k * k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) d[i * k + j] = d[j * k + i] = g.manhattan(anyons[i], anyons[j]);
  return d;
}

// Exact matching by DP over the set of still-unmatched anyons. The lowest
// unmatched anyon is always paired first and partners are tried in index
// order, so ties resolve to the lowest partner index.
std::vector<std::pair<std::size_t, std::size_t>> exact_matching(std::size_t k, const DistanceTable& d) {
  const std::size_t full = (std::size_t{1} << k) - 1;
  constexpr int kUnset = std::numeric_limits<int>::max();
  std::vector<int> best(full + 1, kUnset);
  std::vector<std::uint8_t> choice(full + 1, 0);
  best[0] = 0;
  // Only masks with an even number of bits are reachable; iterate by popcount order.
  for (std::size_t mask = 1; mask <= full; ++mask) {
    if (__builtin_popcountll(mask) % 2 != 0) continue;
    const std::size_t i = static_cast<std::size_t>(__builtin_ctzll(mask));
    const std::size_t rest = mask & ~(std::size_t{1} << i);
    int best_cost = kUnset;
    std::uint8_t best_j = 0;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (!(rest >> j & 1)) continue;
      const int sub = best[rest & ~(std::size_t{1} << j)];
      const int cost = sub + d[i * k + j];
      if (cost < best_cost) {
        best_cost = cost;
        best_j = static_cast<std::uint8_t>(j);
      }
    }
    best[mask] = best_cost;
    choice[mask] = best_j;
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t mask = full;
  while (mask) {
    const std::size_t i = static_cast<std::size_t>(__builtin_ctzll(mask));
    const std::size_t j = choice[mask];
    out.emplace_back(i, j);
    mask &= ~(std::size_t{1} << i);
    mask &= ~(std::size_t{1} << j);
  }
  return out;
}

// Greedy closest-pair matching followed by pairwise re-pairing until no
// exchange of partners between two pairs lowers the weight.
std::vector<std::pair<std::size_t, std::size_t>> greedy_matching(std::size_t k, const DistanceTable& d) {
  std::vector<std::tuple<int, std::size_t, std::size_t>> edges;
  edges.reserve(k * (k - 1) / 2);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) edges.emplace_back(d[i * k + j], i, j);
  std::sort(edges.begin(), edges.end());
  std::vector<std::uint8_t> used(k, 0);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& [w, i, j] : edges) {
    if (used[i] || used[j]) continue;
    used[i] = used[j] = 1;
    pairs.emplace_back(i, j);
  }
  auto dist = [&](std::size_t a, std::size_t b) { return d[a * k + b]; };
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t s = 0; s < pairs.size(); ++s)
      for (std::size_t t = s + 1; t < pairs.size(); ++t) {
        auto [a, b] = pairs[s];
        auto [c, e] = pairs[t];
        const int now = dist(a, b) + dist(c, e);
        const int alt1 = dist(a, c) + dist(b, e);
        const int alt2 = dist(a, e) + dist(b, c);
        if (alt1 < now && alt1 <= alt2) {
          pairs[s] = {std::min(a, c), std::max(a, c)};
          pairs[t] = {std::min(b, e), std::max(b, e)};
          improved = true;
        } else if (alt2 < now) {
          pairs[s] = {std::min(a, e), std::max(a, e)};
          pairs[t] = {std::min(b, c), std::max(b, c)};
          improved = true;
        }
      }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

}  // namespace

void add_shortest_path(BondChain& chain, PlaquetteId a, PlaquetteId b, const TorusGeometry& g) {
  if (a > b) std::swap(a, b);
  const Displacement d = g.displacement(a, b);
  int x = g.x_of(a);
  const int y = g.y_of(a);
  const int sx = d.dx >= 0 ? 1 : -1;
  for (int s = 0; s < std::abs(d.dx); ++s) {
    chain[g.horizontal_bond(sx > 0 ? x : x - 1, y)] ^= 1;
    x += sx;
  }
  int yy = y;
  const int sy = d.dy >= 0 ? 1 : -1;
  for (int s = 0; s < std::abs(d.dy); ++s) {
    chain[g.vertical_bond(x, sy > 0 ? yy : yy - 1)] ^= 1;
    yy += sy;
  }
}

int matching_weight(std::span<const MatchedPair> pairs, const TorusGeometry& g) {
  int w = 0;
  for (const auto& p : pairs) w += g.manhattan(p.a, p.b);
  return w;
}

DecodeOutcome decode_matching(std::span<const std::uint8_t> syndrome, const TorusGeometry& g) {
  if (syndrome.size() != g.num_plaquettes()) throw ValidationError("syndrome size does not match geometry");
  std::vector<PlaquetteId> anyons;
  for (PlaquetteId p = 0; p < syndrome.size(); ++p)
    if (syndrome[p]) anyons.push_back(p);
  if (anyons.size() % 2 != 0) throw OddSyndromeError();

  DecodeOutcome out;
  out.correction.assign(g.num_bonds(), 0);
  if (anyons.empty()) return out;

  const std::size_t k = anyons.size();
  const DistanceTable d = pair_distances(anyons, g);
  const auto index_pairs = k <= kExactMatchingLimit ? exact_matching(k, d) : greedy_matching(k, d);
  for (const auto& [i, j] : index_pairs) {
    out.pairs.push_back({anyons[i], anyons[j]});
    add_shortest_path(out.correction, anyons[i], anyons[j], g);
  }
  return out;
}

LogicalClass failure_verdict(std::span<const std::uint8_t> error_chain,
                             std::span<const std::uint8_t> correction, const TorusGeometry& g) {
  if (error_chain.size() != g.num_bonds() || correction.size() != g.num_bonds())
    throw ValidationError("chain size does not match geometry");
  BondChain sum(error_chain.begin(), error_chain.end());
  add_chain(sum, correction);
  return logical_class(sum, g);
}

DecoderFn matching_decoder() {
  return [](std::span<const std::uint8_t> syndrome, const TorusGeometry& g) {
    return decode_matching(syndrome, g).correction;
  };
}

DecodeOutcome decode(const AnyonConfig& config) {
  DecodeOutcome out = decode_matching(config.occupations(), config.geometry());
  out.verdict = failure_verdict(config.chain(), out.correction, config.geometry());
  return out;
}

DecodeOutcome decode(const AnyonConfig& config, const DecoderFn& decoder) {
  if (!decoder) return decode(config);
  DecodeOutcome out;
  out.correction = decoder(config.occupations(), config.geometry());
  if (boundary(out.correction, config.geometry()) !=
      std::vector<std::uint8_t>(config.occupations().begin(), config.occupations().end()))
    throw ValidationError("decoder returned a correction whose boundary is not the syndrome");
  out.verdict = failure_verdict(config.chain(), out.correction, config.geometry());
  return out;
}

}  // namespace lrm
