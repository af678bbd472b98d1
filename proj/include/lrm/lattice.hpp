#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lrm {

using PlaquetteId = std::size_t;
using BondId = std::size_t;

// Per-bond Z2 vector.
using BondChain = std::vector<std::uint8_t>;

// Minimal-image displacement on the torus, components in (-L/2, L/2].
struct Displacement {
  int dx = 0;
  int dy = 0;
};

/// L x L periodic plaquette lattice.
///
/// Plaquette (x, y) has index y * L + x. Bond indices [0, L^2) are horizontal
/// bonds joining (x, y) to (x + 1, y); bonds [L^2, 2 L^2) are vertical bonds
/// joining (x, y) to (x, y + 1). The fiducial cuts sit between column L-1 and
/// column 0 (crossed by horizontal bonds with x = L-1) and between row L-1 and
/// row 0 (crossed by vertical bonds with y = L-1).
class TorusGeometry {
 public:
  explicit TorusGeometry(int L);

  int size() const { return L_; }
  std::size_t num_plaquettes() const { return static_cast<std::size_t>(L_) * L_; }
  std::size_t num_bonds() const { return 2 * num_plaquettes(); }

  PlaquetteId plaquette(int x, int y) const;
  int x_of(PlaquetteId p) const { return static_cast<int>(p % L_); }
  int y_of(PlaquetteId p) const { return static_cast<int>(p / L_); }

  BondId horizontal_bond(int x, int y) const { return plaquette(x, y); }
  BondId vertical_bond(int x, int y) const { return num_plaquettes() + plaquette(x, y); }
  bool is_horizontal(BondId b) const { return b < num_plaquettes(); }

  std::array<PlaquetteId, 2> bond_ends(BondId b) const;
  std::array<BondId, 4> bonds_of(PlaquetteId p) const;

  // Which winding counter a bond toggles: 0 = horizontal winding (crosses the
  // vertical cut), 1 = vertical winding, -1 = none.
  int cut_crossed(BondId b) const;

  int wrap(int c) const { return ((c % L_) + L_) % L_; }
  int min_image(int d) const;
  Displacement displacement(PlaquetteId from, PlaquetteId to) const;
  double distance(PlaquetteId a, PlaquetteId b) const;
  double distance(Displacement d) const;
  int manhattan(PlaquetteId a, PlaquetteId b) const;

  bool operator==(const TorusGeometry&) const = default;

 private:
  int L_;
};

/// Homology class of a closed chain, an element of Z2 x Z2.
struct LogicalClass {
  std::uint8_t z1 = 0;
  std::uint8_t z2 = 0;

  bool trivial() const { return z1 == 0 && z2 == 0; }
  LogicalClass operator+(LogicalClass o) const {
    return {static_cast<std::uint8_t>(z1 ^ o.z1), static_cast<std::uint8_t>(z2 ^ o.z2)};
  }
  bool operator==(const LogicalClass&) const = default;
  int index() const { return z1 + 2 * z2; }
};

/// Anyon occupations together with the cumulative error chain that produced
/// them and its running cut-crossing parities.
class AnyonConfig {
 public:
  explicit AnyonConfig(const TorusGeometry& geometry);
  static AnyonConfig vacuum(const TorusGeometry& geometry) { return AnyonConfig(geometry); }

  const TorusGeometry& geometry() const { return geometry_; }
  std::span<const std::uint8_t> occupations() const { return occupation_; }
  const BondChain& chain() const { return chain_; }
  LogicalClass winding() const { return winding_; }

  bool occupied(PlaquetteId p) const { return occupation_[p] != 0; }
  int W(PlaquetteId p) const { return 1 - 2 * static_cast<int>(occupation_[p]); }
  std::size_t anyon_count() const { return anyons_; }
  std::size_t chain_weight() const;
  std::vector<PlaquetteId> anyons() const;

  // Toggles the two plaquettes adjacent to b, the chain bit of b, and the
  // winding counter of the cut b crosses (if any).
  void flip_bond(BondId b);

  std::uint64_t digest() const;

  // Rebuilds a config from raw parts; validates the boundary relation.
  static AnyonConfig from_parts(const TorusGeometry& geometry,
                                std::vector<std::uint8_t> occupation, BondChain chain,
                                LogicalClass winding);

  bool operator==(const AnyonConfig& o) const {
    return geometry_ == o.geometry_ && occupation_ == o.occupation_ && chain_ == o.chain_ &&
           winding_ == o.winding_;
  }

 private:
  TorusGeometry geometry_;
  std::vector<std::uint8_t> occupation_;
  BondChain chain_;
  LogicalClass winding_;
  std::size_t anyons_ = 0;
};

AnyonConfig apply_bond_flip(AnyonConfig config, BondId b);

// Mod-2 boundary of a chain, one entry per plaquette.
std::vector<std::uint8_t> boundary(std::span<const std::uint8_t> chain, const TorusGeometry& g);
bool is_closed(std::span<const std::uint8_t> chain, const TorusGeometry& g);

/// Homology class of a closed chain via cut-crossing parities.
/// Throws OpenChainError when the boundary is nonempty.
LogicalClass logical_class(std::span<const std::uint8_t> chain, const TorusGeometry& g);

// Chain helpers.
BondChain horizontal_cycle(const TorusGeometry& g, int row);
BondChain vertical_cycle(const TorusGeometry& g, int column);
BondChain square_loop(const TorusGeometry& g, int x, int y);
void add_chain(BondChain& into, std::span<const std::uint8_t> other);

std::string to_bitstring(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> from_bitstring(const std::string& s);

}  // namespace lrm
