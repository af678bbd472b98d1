#include "lrm/lattice.hpp"

#include <cmath>
#include <cstdlib>

#include "lrm/errors.hpp"

namespace lrm {

TorusGeometry::TorusGeometry(int L) : L_(L) {
  if (L < 2) throw ValidationError("torus size must be at least 2, got " + std::to_string(L));
}

PlaquetteId TorusGeometry::plaquette(int x, int y) const {
  return static_cast<PlaquetteId>(wrap(y)) * L_ + wrap(x);
}

std::array<PlaquetteId, 2> TorusGeometry::bond_ends(BondId b) const {
  const std::size_t n = num_plaquettes();
  if (b < n) {
    const int x = static_cast<int>(b % L_), y = static_cast<int>(b / L_);
    return {b, plaquette(x + 1, y)};
  }
  const std::size_t p = b - n;
  const int x = static_cast<int>(p % L_), y = static_cast<int>(p / L_);
  return {p, plaquette(x, y + 1)};
}

std::array<BondId, 4> TorusGeometry::bonds_of(PlaquetteId p) const {
  const int x = x_of(p), y = y_of(p);
  return {horizontal_bond(x, y), horizontal_bond(x - 1, y), vertical_bond(x, y),
          vertical_bond(x, y - 1)};
}

int TorusGeometry::cut_crossed(BondId b) const {
  const std::size_t n = num_plaquettes();
  if (b < n) return (static_cast<int>(b % L_) == L_ - 1) ? 0 : -1;
  return (static_cast<int>((b - n) / L_) == L_ - 1) ? 1 : -1;
}

int TorusGeometry::min_image(int d) const {
  int m = wrap(d);
  if (2 * m > L_) m -= L_;
  return m;
}

Displacement TorusGeometry::displacement(PlaquetteId from, PlaquetteId to) const {
  return {min_image(x_of(to) - x_of(from)), min_image(y_of(to) - y_of(from))};
}

double TorusGeometry::distance(Displacement d) const {
  const int dx = min_image(d.dx), dy = min_image(d.dy);
  return std::sqrt(static_cast<double>(dx * dx + dy * dy));
}

double TorusGeometry::distance(PlaquetteId a, PlaquetteId b) const {
  return distance(displacement(a, b));
}

int TorusGeometry::manhattan(PlaquetteId a, PlaquetteId b) const {
  const Displacement d = displacement(a, b);
  return std::abs(d.dx) + std::abs(d.dy);
}

AnyonConfig::AnyonConfig(const TorusGeometry& geometry)
    : geometry_(geometry),
      occupation_(geometry.num_plaquettes(), 0),
      chain_(geometry.num_bonds(), 0) {}

std::size_t AnyonConfig::chain_weight() const {
  std::size_t w = 0;
  for (auto e : chain_) w += e;
  return w;
}

std::vector<PlaquetteId> AnyonConfig::anyons() const {
  std::vector<PlaquetteId> out;
  out.reserve(anyons_);
  for (PlaquetteId p = 0; p < occupation_.size(); ++p)
    if (occupation_[p]) out.push_back(p);
  return out;
}

void AnyonConfig::flip_bond(BondId b) {
  const auto [p, q] = geometry_.bond_ends(b);
  for (PlaquetteId r : {p, q}) {
    occupation_[r] ^= 1;
    if (occupation_[r])
      ++anyons_;
    else
      --anyons_;
  }
  chain_[b] ^= 1;
  switch (geometry_.cut_crossed(b)) {
    case 0: winding_.z1 ^= 1; break;
    case 1: winding_.z2 ^= 1; break;
    default: break;
  }
}

std::uint64_t AnyonConfig::digest() const {
  // FNV-1a over the occupation bits, chain bits and winding.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint8_t v) {
    h ^= v;
    h *= 0x100000001b3ULL;
  };
  for (auto v : occupation_) mix(v);
  mix(0xff);
  for (auto v : chain_) mix(v);
  mix(winding_.z1);
  mix(winding_.z2);
  return h;
}

AnyonConfig AnyonConfig::from_parts(const TorusGeometry& geometry,
                                    std::vector<std::uint8_t> occupation, BondChain chain,
                                    LogicalClass winding) {
  if (occupation.size() != geometry.num_plaquettes() || chain.size() != geometry.num_bonds())
    throw ValidationError("config size does not match geometry");
  if (boundary(chain, geometry) != occupation)
    throw ValidationError("occupations are not the boundary of the chain");
  LogicalClass crossed;
  for (BondId b = 0; b < chain.size(); ++b) {
    if (!chain[b]) continue;
    const int cut = geometry.cut_crossed(b);
    if (cut == 0) crossed.z1 ^= 1;
    if (cut == 1) crossed.z2 ^= 1;
  }
  if (!(crossed == winding)) throw ValidationError("winding does not match the chain's cut crossings");
  AnyonConfig c(geometry);
  c.occupation_ = std::move(occupation);
  c.chain_ = std::move(chain);
  c.winding_ = winding;
  c.anyons_ = 0;
  for (auto v : c.occupation_) c.anyons_ += v;
  return c;
}

AnyonConfig apply_bond_flip(AnyonConfig config, BondId b) {
  config.flip_bond(b);
  return config;
}

std::vector<std::uint8_t> boundary(std::span<const std::uint8_t> chain, const TorusGeometry& g) {
  std::vector<std::uint8_t> out(g.num_plaquettes(), 0);
  for (BondId b = 0; b < chain.size(); ++b) {
    if (!chain[b]) continue;
    const auto [p, q] = g.bond_ends(b);
    out[p] ^= 1;
    out[q] ^= 1;
  }
  return out;
}

bool is_closed(std::span<const std::uint8_t> chain, const TorusGeometry& g) {
  for (auto v : boundary(chain, g))
    if (v) return false;
  return true;
}

LogicalClass logical_class(std::span<const std::uint8_t> chain, const TorusGeometry& g) {
  if (chain.size() != g.num_bonds()) throw ValidationError("chain size does not match geometry");
  if (!is_closed(chain, g)) throw OpenChainError();
  LogicalClass c;
  for (BondId b = 0; b < chain.size(); ++b) {
    if (!chain[b]) continue;
    switch (g.cut_crossed(b)) {
      case 0: c.z1 ^= 1; break;
      case 1: c.z2 ^= 1; break;
      default: break;
    }
  }
  return c;
}

BondChain horizontal_cycle(const TorusGeometry& g, int row) {
  BondChain c(g.num_bonds(), 0);
  for (int x = 0; x < g.size(); ++x) c[g.horizontal_bond(x, row)] = 1;
  return c;
}

BondChain vertical_cycle(const TorusGeometry& g, int column) {
  BondChain c(g.num_bonds(), 0);
  for (int y = 0; y < g.size(); ++y) c[g.vertical_bond(column, y)] = 1;
  return c;
}

BondChain square_loop(const TorusGeometry& g, int x, int y) {
  BondChain c(g.num_bonds(), 0);
  c[g.horizontal_bond(x, y)] ^= 1;
  c[g.horizontal_bond(x, y + 1)] ^= 1;
  c[g.vertical_bond(x, y)] ^= 1;
  c[g.vertical_bond(x + 1, y)] ^= 1;
  return c;
}

void add_chain(BondChain& into, std::span<const std::uint8_t> other) {
  if (into.size() != other.size()) throw ValidationError("chain sizes differ");
  for (std::size_t i = 0; i < into.size(); ++i) into[i] ^= other[i];
}

std::string to_bitstring(std::span<const std::uint8_t> bits) {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) s[i] = '1';
  return s;
}

std::vector<std::uint8_t> from_bitstring(const std::string& s) {
  std::vector<std::uint8_t> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw ValidationError("bitstring may only contain 0 and 1");
    out[i] = s[i] == '1';
  }
  return out;
}

}  // namespace lrm
