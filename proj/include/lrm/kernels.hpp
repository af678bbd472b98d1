#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lrm/lattice.hpp"

namespace lrm {

enum class KernelFamily { bare, fourier, power_law, rkky, disordered, matrix };

std::string to_string(KernelFamily f);
KernelFamily kernel_family_from_string(const std::string& s);

// Parameters recorded alongside a kernel table. Unused fields stay zero.
struct KernelParams {
  KernelFamily family = KernelFamily::bare;
  double A = 0.0;        // coupling energy
  double alpha = 0.0;    // power-law exponent
  double epsilon = 0.0;  // boson mass term
  double k = 0.0;        // RKKY wavenumber
  int box = 0;           // 3D box linear size for Fourier kernels
  std::uint64_t seed = 0;
  double j_min = 0.0, j_max = 0.0, j_mean = 0.0;  // disorder range
};

/// Boson dispersion on an n^3 periodic box: eps_q = 4 sum_i sin^2(q_i / 2),
/// shifted by the mass term epsilon. The plaquette lattice sits in the z = 0
/// plane of the box.
struct FourierSpec {
  double epsilon = 0.0;
  int box = 64;
};

/// Pairwise plaquette couplings J(r, r') plus the on-site gap J0.
///
/// Translation-invariant kernels store an L x L table indexed by the
/// displacement (dx mod L, dy mod L); the others store a dense symmetric
/// L^2 x L^2 matrix. The self coupling is always zero.
class InteractionKernel {
 public:
  static InteractionKernel from_table(const TorusGeometry& g, std::vector<double> table,
                                      KernelParams params, double j0 = 0.0);
  static InteractionKernel from_matrix(const TorusGeometry& g, std::vector<double> matrix,
                                       KernelParams params, double j0 = 0.0);

  const TorusGeometry& geometry() const { return geometry_; }
  const KernelParams& params() const { return params_; }
  double j0() const { return j0_; }
  InteractionKernel with_j0(double j0) const;

  bool translation_invariant() const { return !table_.empty(); }
  bool has_pair_terms() const { return has_pairs_; }

  double coupling(PlaquetteId p, PlaquetteId q) const;
  // Table entry for a displacement; only for translation-invariant kernels.
  double at(int dx, int dy) const;
  std::span<const double> table() const { return table_; }

  // Writes J(r, p) for every plaquette r into row (row.size() == L^2).
  void fill_row(PlaquetteId p, std::span<double> row) const;
  std::vector<double> dense_matrix() const;

  // Pointwise sum of the pair couplings; J0 values add too.
  InteractionKernel plus(const InteractionKernel& other) const;

 private:
  InteractionKernel(const TorusGeometry& g, KernelParams params, double j0)
      : geometry_(g), params_(params), j0_(j0) {}
  void finalize();

  TorusGeometry geometry_;
  KernelParams params_;
  double j0_ = 0.0;
  std::vector<double> table_;
  std::vector<double> matrix_;
  bool has_pairs_ = false;
};

// Zero pair table: the bare toric code with gap J0.
InteractionKernel build_kernel_bare(double j0, const TorusGeometry& g);

/// Boson-mediated kernel J(d) = (A^2 / N) sum_q e^{i q.d} / (epsilon + eps_q),
/// evaluated at the minimal-image displacement. The q = 0 mode is dropped when
/// epsilon == 0. Throws ValidationError("box too small") when box < 2 L.
InteractionKernel build_kernel_fourier(double A, const FourierSpec& spec, const TorusGeometry& g);

// J(d) = A^2 / d^alpha on the minimal-image distance.
InteractionKernel build_kernel_powerlaw(double A, double alpha, const TorusGeometry& g);

// J(d) = A^2 [2kd cos(2kd) - sin(2kd)] / d^4.
InteractionKernel build_kernel_rkky(double A, double k, const TorusGeometry& g);

// Uniform couplings drawn from [j_min, j_max] with a fixed seed.
struct CouplingSampler {
  double j_min = 1.0;
  double j_max = 1.0;
  std::uint64_t seed = 0;

  double mean() const { return 0.5 * (j_min + j_max); }
  std::vector<double> draw(std::size_t count) const;
};

// Nearest-neighbour kernel with one coupling per bond (2 L^2 values).
InteractionKernel build_kernel_disordered(std::span<const double> bond_couplings,
                                          const TorusGeometry& g);
InteractionKernel build_kernel_disordered(const CouplingSampler& sampler, const TorusGeometry& g);

/// Energy cost of flipping W_r alone in the all-up vacuum:
/// mu(r) = 2 J0 + 2 sum_{r' != r} J(r, r').
double chemical_potential(const InteractionKernel& kernel, PlaquetteId r);

// Plane slice G(dx, dy, 0) of the n^3 lattice Green function of
// (epsilon - laplacian), indexed [dy * n + dx] with wraparound. q = 0 is
// dropped when epsilon == 0.
std::vector<double> plane_green_function(double epsilon, int n);

/// Vacuum boson displacement scale at the centre plaquette of an L x L patch
/// embedded in the box: S = A sum_{r'} G(r' - r).
double boson_displacement_scaling(double A, const FourierSpec& spec, const TorusGeometry& g);

struct ProfilePoint {
  int distance;
  double energy;
};

/// Energy of one flipped plaquette in the upper (W = -1) half at distance
/// y = 1..L/4 above the lower wall, relative to y = L/4. Requires even L >= 4.
std::vector<ProfilePoint> domain_wall_profile(const InteractionKernel& kernel);

}  // namespace lrm
