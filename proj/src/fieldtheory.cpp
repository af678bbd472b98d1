#include "lrm/fieldtheory.hpp"

#include <cmath>

#include "lrm/errors.hpp"
#include "lrm/simd.hpp"

namespace lrm {

ScalarFieldGrid ScalarFieldGrid::make(int n, double mass2, double A) {
  if (n < 3) throw ValidationError("field grid needs n >= 3");
  if (!(mass2 >= 0.0)) throw ValidationError("mass^2 must be nonnegative");
  ScalarFieldGrid g;
  g.n = n;
  g.mass2 = mass2;
  g.A = A;
  g.source.assign(g.size(), 0.0);
  g.phi.assign(g.size(), 0.0);
  return g;
}

void ScalarFieldGrid::set_point_source(double w0) {
  std::fill(source.begin(), source.end(), 0.0);
  source[index(center(), center(), center())] = w0;
}

void ScalarFieldGrid::set_disk_source(double radius, double w0) {
  std::fill(source.begin(), source.end(), 0.0);
  const int c = center();
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      const double dx = x - c, dy = y - c;
      if (dx * dx + dy * dy <= radius * radius) source[index(x, y, c)] = w0;
    }
}

bool ScalarFieldGrid::source_is_planar() const {
  const int c = center();
  for (int z = 0; z < n; ++z) {
    if (z == c) continue;
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        if (source[index(x, y, z)] != 0.0) return false;
  }
  return true;
}

void apply_helmholtz(int n, double mass2, const std::vector<double>& x, std::vector<double>& y) {
  const std::size_t row = static_cast<std::size_t>(n), plane = row * n;
  const std::vector<double> zero(row, 0.0);
  const double diag = 6.0 + mass2;
  y.resize(x.size());
  for (int z = 0; z < n; ++z)
    for (int yy = 0; yy < n; ++yy) {
      const std::size_t base = static_cast<std::size_t>(z) * plane + static_cast<std::size_t>(yy) * row;
      const double* c = x.data() + base;
      const double* ym = yy > 0 ? c - row : zero.data();
      const double* yp = yy + 1 < n ? c + row : zero.data();
      const double* zm = z > 0 ? c - plane : zero.data();
      const double* zp = z + 1 < n ? c + plane : zero.data();
      simd::stencil_row(diag, c, ym, yp, zm, zp, y.data() + base, row);
    }
}

SolveReport solve_helmholtz(int n, double mass2, const std::vector<double>& rhs, std::vector<double>& phi,
                            const SolverOptions& options) {
  const std::size_t size = static_cast<std::size_t>(n) * n * n;
  if (rhs.size() != size) throw ValidationError("rhs size must be n^3");
  phi.assign(size, 0.0);
  const double rhs_norm = std::sqrt(simd::dot(rhs, rhs));
  SolveReport report;
  if (rhs_norm == 0.0) return report;

  std::vector<double> r = rhs, p = rhs, ap(size);
  double rr = simd::dot(r, r);
  const double target = options.rel_tol * rhs_norm;
  int it = 0;
  while (std::sqrt(rr) >= target) {
    if (it >= options.max_iterations) throw ConvergenceError(it, std::sqrt(rr) / rhs_norm);
    apply_helmholtz(n, mass2, p, ap);
    const double alpha = rr / simd::dot(p, ap);
    simd::axpy(alpha, p, phi);
    simd::axpy(-alpha, ap, r);
    const double rr_new = simd::dot(r, r);
    simd::xpby(r, rr_new / rr, p);
    rr = rr_new;
    ++it;
  }
  // Report the true residual rather than the recurrence estimate.
  apply_helmholtz(n, mass2, phi, ap);
  double res = 0.0;
  for (std::size_t i = 0; i < size; ++i) res += (rhs[i] - ap[i]) * (rhs[i] - ap[i]);
  report.iterations = it;
  report.relative_residual = std::sqrt(res) / rhs_norm;
  return report;
}

SolveReport solve_static_field(ScalarFieldGrid& grid, const SolverOptions& options) {
  if (grid.source.size() != grid.size()) throw ValidationError("source size must be n^3");
  if (!grid.source_is_planar()) throw ValidationError("source must be supported on the central plane");
  if (!(grid.mass2 >= 0.0)) throw ValidationError("mass^2 must be nonnegative");
  std::vector<double> rhs(grid.source);
  for (auto& v : rhs) v *= grid.A;
  return solve_helmholtz(grid.n, grid.mass2, rhs, grid.phi, options);
}

FieldEnergy energy_functional(const ScalarFieldGrid& g) {
  const int n = g.n;
  double coupling = 0.0, grad2 = 0.0, phi2 = 0.0;
  auto at = [&](int x, int y, int z) {
    if (x < 0 || y < 0 || z < 0 || x >= n || y >= n || z >= n) return 0.0;
    return g.phi[g.index(x, y, z)];
  };
  for (int z = 0; z < n; ++z)
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) {
        const double v = g.phi[g.index(x, y, z)];
        coupling += g.source[g.index(x, y, z)] * v;
        phi2 += v * v;
        // Links to the +x, +y, +z neighbours, plus the links into the
        // boundary on the low side.
        const double dx = at(x + 1, y, z) - v, dy = at(x, y + 1, z) - v, dz = at(x, y, z + 1) - v;
        grad2 += dx * dx + dy * dy + dz * dz;
        if (x == 0) grad2 += v * v;
        if (y == 0) grad2 += v * v;
        if (z == 0) grad2 += v * v;
      }
  FieldEnergy e;
  e.surface = -0.5 * g.A * coupling;
  e.volume = 0.5 * grad2 + 0.5 * g.mass2 * phi2 - g.A * coupling;
  return e;
}

ChemicalPotentialReport chemical_potential_continuum(int n, double diameter, double mass2, double A,
                                                     double w0, const SolverOptions& options) {
  if (!(diameter > 0.0)) throw ValidationError("disk diameter must be positive");
  if (n < 2 * diameter) throw ValidationError("box must exceed twice the source diameter");
  ScalarFieldGrid grid = ScalarFieldGrid::make(n, mass2, A);
  grid.set_disk_source(0.5 * diameter, 1.0);
  const SolveReport rep = solve_static_field(grid, options);
  ChemicalPotentialReport out;
  out.phi_center = grid.field_at(grid.center(), grid.center(), grid.center());
  out.mu = 2.0 * w0 * A * out.phi_center;
  out.iterations = rep.iterations;
  return out;
}

double chemical_potential_box_extrapolated(int n, double diameter, double mass2, double A, double w0,
                                           const SolverOptions& options) {
  const double coarse = chemical_potential_continuum(n, diameter, mass2, A, w0, options).mu;
  const double fine = chemical_potential_continuum(2 * n, diameter, mass2, A, w0, options).mu;
  return 2.0 * fine - coarse;
}

GoldstoneReport goldstone_contact_energy(int n, double radius, double width, double A, double w0,
                                         const SolverOptions& options) {
  if (n < 3) throw ValidationError("field grid needs n >= 3");
  if (!(width > 0.0) || !(radius > 0.0)) throw ValidationError("source radius and width must be positive");
  const std::size_t size = static_cast<std::size_t>(n) * n * n;
  const int c = n / 2;
  std::vector<double> w(size);
  auto idx = [n](int x, int y, int z) { return (static_cast<std::size_t>(z) * n + y) * n + x; };
  double w2 = 0.0;
  for (int z = 0; z < n; ++z)
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) {
        const double r = std::sqrt(double((x - c) * (x - c) + (y - c) * (y - c) + (z - c) * (z - c)));
        const double v = w0 * 0.5 * (1.0 - std::tanh((r - radius) / width));
        w[idx(x, y, z)] = v;
        w2 += v * v;
      }
  GoldstoneReport out;
  out.contact = -0.5 * A * A * w2;
  std::vector<double> rho(size), phi;
  for (int axis = 0; axis < 3; ++axis) {
    for (int z = 0; z < n; ++z)
      for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
          int xs = x, ys = y, zs = z;
          (axis == 0 ? xs : axis == 1 ? ys : zs) += 1;
          const double next = (xs < n && ys < n && zs < n) ? w[idx(xs, ys, zs)] : 0.0;
          rho[idx(x, y, z)] = A * (next - w[idx(x, y, z)]);
        }
    solve_helmholtz(n, 0.0, rho, phi, options);
    out.per_axis[axis] = -0.5 * simd::dot(rho, phi);
    out.field += out.per_axis[axis];
  }
  return out;
}

}  // namespace lrm
