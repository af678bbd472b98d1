#pragma once

#include <array>
#include <vector>

namespace lrm {

/// Scalar field on an n^3 grid with spacing 1. Sites outside the box are held
/// at zero (Dirichlet), which stands in for "phi vanishes at infinity".
struct ScalarFieldGrid {
  int n = 0;
  double mass2 = 0.0;
  double A = 1.0;
  std::vector<double> source;  // w, n^3 entries
  std::vector<double> phi;     // filled by solve_static_field

  static ScalarFieldGrid make(int n, double mass2, double A);

  std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
  std::size_t index(int x, int y, int z) const {
    return (static_cast<std::size_t>(z) * n + y) * n + x;
  }
  int center() const { return n / 2; }
  double field_at(int x, int y, int z) const { return phi[index(x, y, z)]; }

  // Source setters on the central z-plane.
  void set_point_source(double w0);
  void set_disk_source(double radius, double w0);

  // Source vanishes away from the central plane.
  bool source_is_planar() const;
};

struct SolverOptions {
  double rel_tol = 1e-8;
  int max_iterations = 20000;
};

struct SolveReport {
  int iterations = 0;
  double relative_residual = 0.0;
};

// y = (6 + mass2) x - sum of the six neighbours, zero outside the box.
void apply_helmholtz(int n, double mass2, const std::vector<double>& x, std::vector<double>& y);

/// Conjugate-gradient solve of (-laplacian + mass2) phi = rhs to
/// ||residual|| < rel_tol ||rhs||. Throws ConvergenceError at the cap.
SolveReport solve_helmholtz(int n, double mass2, const std::vector<double>& rhs, std::vector<double>& phi,
                            const SolverOptions& options = {});

/// Solves (-laplacian + mass2) phi = A w for a planar source.
SolveReport solve_static_field(ScalarFieldGrid& grid, const SolverOptions& options = {});

struct FieldEnergy {
  double surface = 0.0;  // -(A/2) sum w phi
  double volume = 0.0;   // (1/2) sum (grad phi)^2 + (m^2/2) sum phi^2 - A sum w phi
};

FieldEnergy energy_functional(const ScalarFieldGrid& grid);

struct ChemicalPotentialReport {
  double mu = 0.0;
  double phi_center = 0.0;
  int iterations = 0;
};

/// mu = 2 w0 A phi(centre), where phi solves the field equation for a unit
/// disk source of the given diameter centred in an n^3 box.
ChemicalPotentialReport chemical_potential_continuum(int n, double diameter, double mass2, double A,
                                                     double w0 = 1.0, const SolverOptions& options = {});

/// Removes the leading 1/n Dirichlet image offset by combining boxes n and 2n:
/// 2 mu(2n) - mu(n).
double chemical_potential_box_extrapolated(int n, double diameter, double mass2, double A,
                                           double w0 = 1.0, const SolverOptions& options = {});

struct GoldstoneReport {
  double field = 0.0;                  // minimized energy, summed over derivative axes
  double contact = 0.0;                // -(A^2/2) sum w^2
  std::array<double, 3> per_axis{};    // contribution of each derivative axis
};

/// Massless field derivatively coupled to a smooth bulk source
/// w(x) = w0 (1 - tanh((|x - c| - radius) / width)) / 2. Each axis i sources
/// the field through the forward difference D_i w; the summed minimized
/// energy is compared against the local form -(A^2/2) sum w^2.
GoldstoneReport goldstone_contact_energy(int n, double radius, double width, double A, double w0 = 1.0,
                                         const SolverOptions& options = {});

}  // namespace lrm
