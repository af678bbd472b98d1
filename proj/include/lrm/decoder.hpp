#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lrm/lattice.hpp"

namespace lrm {

struct MatchedPair {
  PlaquetteId a;
  PlaquetteId b;
};

struct DecodeOutcome {
  BondChain correction;
  std::vector<MatchedPair> pairs;
  LogicalClass verdict;  // class of error chain + correction
};

// Anyon counts up to this bound are matched exactly (subset DP).
inline constexpr std::size_t kExactMatchingLimit = 12;

/// Minimum-weight perfect matching of the syndrome under the torus Manhattan
/// metric. The correction is the union of shortest paths between matched
/// anyons, each running from the lower-indexed anyon: horizontal leg along its
/// row first, then the vertical leg. Throws OddSyndromeError on odd parity.
/// The verdict field is left trivial; see decode().
DecodeOutcome decode_matching(std::span<const std::uint8_t> syndrome, const TorusGeometry& g);

// Total Manhattan length of a matching.
int matching_weight(std::span<const MatchedPair> pairs, const TorusGeometry& g);

// Toggles the canonical shortest path between a and b into chain.
void add_shortest_path(BondChain& chain, PlaquetteId a, PlaquetteId b, const TorusGeometry& g);

/// Logical class of error + correction. Throws OpenChainError when the sum is
/// not closed.
LogicalClass failure_verdict(std::span<const std::uint8_t> error_chain,
                             std::span<const std::uint8_t> correction, const TorusGeometry& g);

// Pluggable correction strategy: syndrome -> correction chain.
using DecoderFn = std::function<BondChain(std::span<const std::uint8_t>, const TorusGeometry&)>;

DecoderFn matching_decoder();

// Decodes the config's syndrome and judges it against the config's own chain.
DecodeOutcome decode(const AnyonConfig& config);
DecodeOutcome decode(const AnyonConfig& config, const DecoderFn& decoder);

}  // namespace lrm
