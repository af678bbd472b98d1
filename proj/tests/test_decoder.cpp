#include <doctest.h>

#include <algorithm>

#include "lrm/decoder.hpp"
#include "lrm/errors.hpp"
#include "lrm/rng.hpp"
#include "oracles.hpp"

using namespace lrm;

namespace {

std::vector<std::uint8_t> random_syndrome(const TorusGeometry& g, Rng& rng, std::size_t anyons) {
  std::vector<std::uint8_t> s(g.num_plaquettes(), 0);
  std::size_t placed = 0;
  while (placed < anyons) {
    const std::size_t p = uniform_index(rng, s.size());
    if (!s[p]) {
      s[p] = 1;
      ++placed;
    }
  }
  return s;
}

std::vector<int> anyon_list(const std::vector<std::uint8_t>& s) {
  std::vector<int> a;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i]) a.push_back(static_cast<int>(i));
  return a;
}

std::size_t weight(const BondChain& c) { return static_cast<std::size_t>(std::count(c.begin(), c.end(), 1)); }

}  // namespace

TEST_SUITE("decoder") {
  TEST_CASE("trivial syndromes") {
    const TorusGeometry g(6);
    const std::vector<std::uint8_t> empty(g.num_plaquettes(), 0);
    const auto d = decode_matching(empty, g);
    CHECK(weight(d.correction) == 0);
    CHECK(d.pairs.empty());
    for (BondId b = 0; b < g.num_bonds(); ++b) {
      const AnyonConfig c = apply_bond_flip(AnyonConfig::vacuum(g), b);
      const auto out = decode_matching(c.occupations(), g);
      CHECK(weight(out.correction) == 1);
      CHECK(out.correction[b] == 1);
    }
  }

  TEST_CASE("two close pairs on L = 6") {
    const TorusGeometry g(6);
    std::vector<std::uint8_t> s(36, 0);
    s[g.plaquette(0, 0)] = s[g.plaquette(1, 0)] = 1;
    s[g.plaquette(3, 3)] = s[g.plaquette(3, 4)] = 1;
    const auto d = decode_matching(s, g);
    CHECK(matching_weight(d.pairs, g) == oracle::min_matching(anyon_list(s), 6));
    CHECK(weight(d.correction) == 2);
  }

  TEST_CASE("property: exact matching weight and boundary for up to 10 anyons") {
    Rng rng(404);
    for (int trial = 0; trial < 300; ++trial) {
      const int L = 4 + 2 * static_cast<int>(uniform_index(rng, 2));
      const TorusGeometry g(L);
      const std::size_t n = 2 * (1 + uniform_index(rng, 5));
      const auto s = random_syndrome(g, rng, n);
      const auto d = decode_matching(s, g);
      CHECK(boundary(d.correction, g) == s);
      CHECK(matching_weight(d.pairs, g) == oracle::min_matching(anyon_list(s), L));
      CHECK(weight(d.correction) <= static_cast<std::size_t>(matching_weight(d.pairs, g)));
    }
  }

  TEST_CASE("large syndromes still yield a valid correction") {
    Rng rng(405);
    const TorusGeometry g(12);
    for (int trial = 0; trial < 20; ++trial) {
      const auto s = random_syndrome(g, rng, 14 + 2 * uniform_index(rng, 8));
      const auto d = decode_matching(s, g);
      CHECK(boundary(d.correction, g) == s);
      CHECK(d.pairs.size() * 2 == anyon_list(s).size());
    }
  }

  TEST_CASE("decoding is deterministic") {
    Rng rng(9);
    const TorusGeometry g(8);
    const auto s = random_syndrome(g, rng, 8);
    CHECK(decode_matching(s, g).correction == decode_matching(s, g).correction);
  }

  TEST_CASE("odd syndrome is rejected") {
    const TorusGeometry g(4);
    std::vector<std::uint8_t> s(16, 0);
    s[3] = 1;
    CHECK_THROWS_AS(decode_matching(s, g), OddSyndromeError);
  }

  TEST_CASE("failure verdicts") {
    const TorusGeometry g(4);
    const BondChain none(g.num_bonds(), 0);
    CHECK(failure_verdict(none, none, g).trivial());
    CHECK(failure_verdict(horizontal_cycle(g, 1), none, g) == LogicalClass{1, 0});
    BondChain open(g.num_bonds(), 0);
    open[0] = 1;
    CHECK_THROWS_AS(failure_verdict(open, none, g), OpenChainError);
  }

  TEST_CASE("exhaustive: short error chains always decode correctly") {
    for (int L : {4, 6}) {
      const TorusGeometry g(L);
      const std::size_t nb = g.num_bonds();
      // Every chain of weight < L/2.
      std::vector<std::vector<BondId>> chains{{}};
      for (BondId a = 0; a < nb; ++a) {
        chains.push_back({a});
        if (L / 2 > 2)
          for (BondId b = a + 1; b < nb; ++b) chains.push_back({a, b});
      }
      for (const auto& ch : chains) {
        AnyonConfig c = AnyonConfig::vacuum(g);
        for (BondId b : ch) c.flip_bond(b);
        CHECK(decode(c).verdict.trivial());
      }
    }
  }

  TEST_CASE("property: a pair closer than L/2 decodes to the trivial class") {
    Rng rng(12);
    const int L = 8;
    const TorusGeometry g(L);
    for (int trial = 0; trial < 200; ++trial) {
      const PlaquetteId a = uniform_index(rng, g.num_plaquettes());
      PlaquetteId b;
      do b = uniform_index(rng, g.num_plaquettes());
      while (b == a || g.distance(a, b) >= L / 2.0);
      BondChain path(g.num_bonds(), 0);
      add_shortest_path(path, a, b, g);
      const auto occ = boundary(path, g);
      const auto [z1, z2] = oracle::crossing_parity(path, L);
      const AnyonConfig c = AnyonConfig::from_parts(g, occ, path, {std::uint8_t(z1), std::uint8_t(z2)});
      CHECK(decode(c).verdict.trivial());
    }
  }

  TEST_CASE("pluggable decoders") {
    const TorusGeometry g(6);
    AnyonConfig c = AnyonConfig::vacuum(g);
    for (int x = 0; x < 4; ++x) c.flip_bond(g.horizontal_bond(x, 2));
    // Correcting the long way round completes a horizontal cycle.
    const DecoderFn long_way = [](std::span<const std::uint8_t>, const TorusGeometry& geo) {
      BondChain corr(geo.num_bonds(), 0);
      for (int x = 4; x < geo.size(); ++x) corr[geo.horizontal_bond(x, 2)] = 1;
      return corr;
    };
    CHECK(decode(c, long_way).verdict == LogicalClass{1, 0});
    CHECK(decode(c, matching_decoder()).verdict == decode(c).verdict);
    const DecoderFn broken = [](std::span<const std::uint8_t>, const TorusGeometry& geo) {
      return BondChain(geo.num_bonds(), 0);
    };
    CHECK_THROWS_AS(decode(c, broken), ValidationError);
  }
}
