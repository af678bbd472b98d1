#include "lrm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lrm/errors.hpp"
#include "lrm/rng.hpp"

namespace lrm {

std::string to_string(KernelFamily f) {
  switch (f) {
    case KernelFamily::bare: return "bare";
    case KernelFamily::fourier: return "fourier";
    case KernelFamily::power_law: return "powerlaw";
    case KernelFamily::rkky: return "rkky";
    case KernelFamily::disordered: return "disordered";
    case KernelFamily::matrix: return "matrix";
  }
  return "unknown";
}

KernelFamily kernel_family_from_string(const std::string& s) {
  if (s == "bare" || s == "toric") return KernelFamily::bare;
  if (s == "fourier") return KernelFamily::fourier;
  if (s == "powerlaw" || s == "power_law") return KernelFamily::power_law;
  if (s == "rkky") return KernelFamily::rkky;
  if (s == "disordered") return KernelFamily::disordered;
  if (s == "matrix") return KernelFamily::matrix;
  throw ValidationError("unknown kernel family '" + s + "'");
}

InteractionKernel InteractionKernel::from_table(const TorusGeometry& g, std::vector<double> table,
                                                KernelParams params, double j0) {
  const int L = g.size();
  if (table.size() != g.num_plaquettes()) throw ValidationError("kernel table must have L*L entries");
  for (int dy = 0; dy < L; ++dy)
    for (int dx = 0; dx < L; ++dx) {
      const double a = table[dy * L + dx];
      const double b = table[g.wrap(-dy) * L + g.wrap(-dx)];
      if (a != b) throw ValidationError("kernel table is not symmetric under d -> -d");
    }
  InteractionKernel k(g, params, j0);
  k.table_ = std::move(table);
  k.finalize();
  return k;
}

InteractionKernel InteractionKernel::from_matrix(const TorusGeometry& g, std::vector<double> matrix,
                                                 KernelParams params, double j0) {
  const std::size_t n = g.num_plaquettes();
  if (matrix.size() != n * n) throw ValidationError("kernel matrix must have L^2 x L^2 entries");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (matrix[i * n + j] != matrix[j * n + i])
        throw ValidationError("kernel matrix is not symmetric");
  InteractionKernel k(g, params, j0);
  k.matrix_ = std::move(matrix);
  k.finalize();
  return k;
}

void InteractionKernel::finalize() {
  if (!table_.empty()) {
    table_[0] = 0.0;
    has_pairs_ = std::any_of(table_.begin(), table_.end(), [](double v) { return v != 0.0; });
  } else {
    const std::size_t n = geometry_.num_plaquettes();
    for (std::size_t i = 0; i < n; ++i) matrix_[i * n + i] = 0.0;
    has_pairs_ = std::any_of(matrix_.begin(), matrix_.end(), [](double v) { return v != 0.0; });
  }
}

InteractionKernel InteractionKernel::with_j0(double j0) const {
  InteractionKernel k = *this;
  k.j0_ = j0;
  return k;
}

double InteractionKernel::at(int dx, int dy) const {
  if (table_.empty()) throw ValidationError("kernel is not translation invariant");
  const int L = geometry_.size();
  return table_[geometry_.wrap(dy) * L + geometry_.wrap(dx)];
}

double InteractionKernel::coupling(PlaquetteId p, PlaquetteId q) const {
  if (p == q) return 0.0;
  if (!table_.empty()) {
    return at(geometry_.x_of(q) - geometry_.x_of(p), geometry_.y_of(q) - geometry_.y_of(p));
  }
  return matrix_[p * geometry_.num_plaquettes() + q];
}

void InteractionKernel::fill_row(PlaquetteId p, std::span<double> row) const {
  const std::size_t n = geometry_.num_plaquettes();
  if (row.size() != n) throw ValidationError("row size must be L^2");
  if (table_.empty()) {
    std::copy_n(matrix_.begin() + static_cast<std::ptrdiff_t>(p * n), n, row.begin());
    return;
  }
  const int L = geometry_.size();
  const int px = geometry_.x_of(p), py = geometry_.y_of(p);
  for (int ry = 0; ry < L; ++ry) {
    const double* trow = table_.data() + static_cast<std::size_t>(geometry_.wrap(ry - py)) * L;
    double* out = row.data() + static_cast<std::size_t>(ry) * L;
    for (int rx = 0; rx < L; ++rx) out[rx] = trow[geometry_.wrap(rx - px)];
  }
}

std::vector<double> InteractionKernel::dense_matrix() const {
  const std::size_t n = geometry_.num_plaquettes();
  std::vector<double> m(n * n);
  for (std::size_t p = 0; p < n; ++p) fill_row(p, std::span<double>(m.data() + p * n, n));
  return m;
}

InteractionKernel InteractionKernel::plus(const InteractionKernel& other) const {
  if (!(geometry_ == other.geometry_)) throw ValidationError("kernels live on different geometries");
  KernelParams params;
  params.family = KernelFamily::matrix;
  if (translation_invariant() && other.translation_invariant()) {
    std::vector<double> t(table_.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = table_[i] + other.table_[i];
    return from_table(geometry_, std::move(t), params, j0_ + other.j0_);
  }
  std::vector<double> m = dense_matrix();
  const std::vector<double> o = other.dense_matrix();
  for (std::size_t i = 0; i < m.size(); ++i) m[i] += o[i];
  return from_matrix(geometry_, std::move(m), params, j0_ + other.j0_);
}

namespace {

// Table of f(d) over minimal-image displacements, f(0) unused.
template <typename F>
std::vector<double> radial_table(const TorusGeometry& g, F f) {
  const int L = g.size();
  std::vector<double> t(g.num_plaquettes(), 0.0);
  for (int dy = 0; dy < L; ++dy)
    for (int dx = 0; dx < L; ++dx) {
      if (dx == 0 && dy == 0) continue;
      t[dy * L + dx] = f(g.distance(Displacement{dx, dy}));
    }
  return t;
}

}  // namespace

InteractionKernel build_kernel_bare(double j0, const TorusGeometry& g) {
  KernelParams params;
  params.family = KernelFamily::bare;
  return InteractionKernel::from_table(g, std::vector<double>(g.num_plaquettes(), 0.0), params, j0);
}

std::vector<double> plane_green_function(double epsilon, int n) {
  if (n < 2) throw ValidationError("box size must be at least 2");
  if (epsilon < 0.0) throw ValidationError("mass term must be nonnegative");
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> s(n), cos_table(n);
  for (int k = 0; k < n; ++k) {
    const double sk = std::sin(std::numbers::pi * k / n);
    s[k] = 4.0 * sk * sk;
    cos_table[k] = std::cos(two_pi * k / n);
  }
  // Sum over q_z first: gz[qy * n + qx] = (1/n) sum_qz 1 / (eps + eps_q).
  std::vector<double> gz(static_cast<std::size_t>(n) * n, 0.0);
  for (int qy = 0; qy < n; ++qy)
    for (int qx = 0; qx < n; ++qx) {
      double acc = 0.0;
      for (int qz = 0; qz < n; ++qz) {
        if (epsilon == 0.0 && qx == 0 && qy == 0 && qz == 0) continue;
        acc += 1.0 / (epsilon + s[qx] + s[qy] + s[qz]);
      }
      gz[qy * n + qx] = acc / n;
    }
  // Separable cosine transform; the sine parts cancel because gz is even.
  std::vector<double> partial(static_cast<std::size_t>(n) * n, 0.0);
  for (int qy = 0; qy < n; ++qy)
    for (int dx = 0; dx < n; ++dx) {
      double acc = 0.0;
      for (int qx = 0; qx < n; ++qx) acc += cos_table[(qx * dx) % n] * gz[qy * n + qx];
      partial[qy * n + dx] = acc;
    }
  std::vector<double> g(static_cast<std::size_t>(n) * n, 0.0);
  const double norm = 1.0 / (static_cast<double>(n) * n);
  for (int dy = 0; dy < n; ++dy)
    for (int dx = 0; dx < n; ++dx) {
      double acc = 0.0;
      for (int qy = 0; qy < n; ++qy) acc += cos_table[(qy * dy) % n] * partial[qy * n + dx];
      g[dy * n + dx] = acc * norm;
    }
  // The two cosine passes can differ in the last ulp between entries related
  // by the square's point group; copy each orbit's representative so the
  // table is exactly symmetric.
  std::vector<double> out(g.size());
  for (int dy = 0; dy < n; ++dy)
    for (int dx = 0; dx < n; ++dx) {
      const int a = std::min(dx, n - dx), b = std::min(dy, n - dy);
      out[static_cast<std::size_t>(dy) * n + dx] = g[static_cast<std::size_t>(std::max(a, b)) * n + std::min(a, b)];
    }
  return out;
}

namespace {

void check_box(const FourierSpec& spec, const TorusGeometry& g) {
  if (spec.box < 2 || (spec.box & (spec.box - 1)) != 0)
    throw ValidationError("box size must be a power of two");
  if (spec.box < 2 * g.size())
    throw ValidationError("box too small: need box >= 2L (box " + std::to_string(spec.box) +
                          ", L " + std::to_string(g.size()) + ")");
  if (spec.epsilon < 0.0) throw ValidationError("mass term must be nonnegative");
}

}  // namespace

InteractionKernel build_kernel_fourier(double A, const FourierSpec& spec, const TorusGeometry& g) {
  check_box(spec, g);
  const int L = g.size(), n = spec.box;
  const std::vector<double> green = plane_green_function(spec.epsilon, n);
  std::vector<double> t(g.num_plaquettes(), 0.0);
  for (int dy = 0; dy < L; ++dy)
    for (int dx = 0; dx < L; ++dx) {
      const int mx = (g.min_image(dx) + n) % n, my = (g.min_image(dy) + n) % n;
      t[dy * L + dx] = A * A * green[static_cast<std::size_t>(my) * n + mx];
    }
  // For even L the two images at dx = L/2 coincide; the table is already
  // symmetric because G(d) = G(-d) on the box.
  for (int dy = 0; dy < L; ++dy)
    for (int dx = 0; dx < L; ++dx) {
      double& a = t[dy * L + dx];
      double& b = t[g.wrap(-dy) * L + g.wrap(-dx)];
      if (&a < &b) a = b = 0.5 * (a + b);
    }
  KernelParams params;
  params.family = KernelFamily::fourier;
  params.A = A;
  params.epsilon = spec.epsilon;
  params.box = n;
  return InteractionKernel::from_table(g, std::move(t), params);
}

InteractionKernel build_kernel_powerlaw(double A, double alpha, const TorusGeometry& g) {
  if (!(alpha > 0.0)) throw ValidationError("power-law exponent must be positive");
  KernelParams params;
  params.family = KernelFamily::power_law;
  params.A = A;
  params.alpha = alpha;
  return InteractionKernel::from_table(
      g, radial_table(g, [&](double d) { return A * A / std::pow(d, alpha); }), params);
}

InteractionKernel build_kernel_rkky(double A, double k, const TorusGeometry& g) {
  if (!(k > 0.0)) throw ValidationError("RKKY wavenumber must be positive");
  KernelParams params;
  params.family = KernelFamily::rkky;
  params.A = A;
  params.k = k;
  return InteractionKernel::from_table(g, radial_table(g, [&](double d) {
    const double x = 2.0 * k * d;
    return A * A * (x * std::cos(x) - std::sin(x)) / (d * d * d * d);
  }), params);
}

std::vector<double> CouplingSampler::draw(std::size_t count) const {
  if (!(j_min > 0.0) || j_max < j_min) throw ValidationError("couplings must satisfy 0 < j_min <= j_max");
  Rng rng(seed);
  std::vector<double> out(count);
  for (auto& v : out) v = j_min + (j_max - j_min) * uniform01(rng);
  return out;
}

InteractionKernel build_kernel_disordered(std::span<const double> bond_couplings,
                                          const TorusGeometry& g) {
  if (bond_couplings.size() != g.num_bonds())
    throw ValidationError("need one coupling per bond (2 L^2 values)");
  const std::size_t n = g.num_plaquettes();
  std::vector<double> m(n * n, 0.0);
  double lo = bond_couplings[0], hi = bond_couplings[0];
  for (BondId b = 0; b < bond_couplings.size(); ++b) {
    const double j = bond_couplings[b];
    if (!(j > 0.0)) throw ValidationError("disordered couplings must be positive");
    lo = std::min(lo, j);
    hi = std::max(hi, j);
    const auto [p, q] = g.bond_ends(b);
    m[p * n + q] += j;
    m[q * n + p] += j;
  }
  KernelParams params;
  params.family = KernelFamily::disordered;
  params.j_min = lo;
  params.j_max = hi;
  params.j_mean = 0.5 * (lo + hi);
  return InteractionKernel::from_matrix(g, std::move(m), params);
}

InteractionKernel build_kernel_disordered(const CouplingSampler& sampler, const TorusGeometry& g) {
  InteractionKernel k = build_kernel_disordered(sampler.draw(g.num_bonds()), g);
  KernelParams params = k.params();
  params.seed = sampler.seed;
  params.j_min = sampler.j_min;
  params.j_max = sampler.j_max;
  params.j_mean = sampler.mean();
  return InteractionKernel::from_matrix(g, k.dense_matrix(), params);
}

double chemical_potential(const InteractionKernel& kernel, PlaquetteId r) {
  const TorusGeometry& g = kernel.geometry();
  double sum = 0.0;
  if (kernel.translation_invariant()) {
    for (double v : kernel.table()) sum += v;
  } else {
    for (PlaquetteId q = 0; q < g.num_plaquettes(); ++q) sum += kernel.coupling(r, q);
  }
  return 2.0 * kernel.j0() + 2.0 * sum;
}

double boson_displacement_scaling(double A, const FourierSpec& spec, const TorusGeometry& g) {
  check_box(spec, g);
  if (A == 0.0) return 0.0;
  const int L = g.size(), n = spec.box;
  const std::vector<double> green = plane_green_function(spec.epsilon, n);
  const int cx = L / 2, cy = L / 2;
  double sum = 0.0;
  for (int y = 0; y < L; ++y)
    for (int x = 0; x < L; ++x) {
      const int dx = (x - cx + n) % n, dy = (y - cy + n) % n;
      sum += green[static_cast<std::size_t>(dy) * n + dx];
    }
  return A * sum;
}

std::vector<ProfilePoint> domain_wall_profile(const InteractionKernel& kernel) {
  const TorusGeometry& g = kernel.geometry();
  const int L = g.size();
  if (L < 4 || L % 2 != 0) throw ValidationError("domain wall profile needs even L >= 4");
  const std::size_t n = g.num_plaquettes();
  std::vector<int> w(n);
  for (PlaquetteId p = 0; p < n; ++p) w[p] = g.y_of(p) < L / 2 ? 1 : -1;
  // Cost of flipping W_r at row L/2 - 1 + y: 2 W_r (J0 + h_r).
  auto flip_cost = [&](int y) {
    const PlaquetteId r = g.plaquette(0, L / 2 - 1 + y);
    double h = 0.0;
    for (PlaquetteId q = 0; q < n; ++q) h += kernel.coupling(r, q) * w[q];
    return 2.0 * w[r] * (kernel.j0() + h);
  };
  const int top = L / 4;
  const double ref = flip_cost(top);
  std::vector<ProfilePoint> out;
  for (int y = 1; y <= top; ++y) out.push_back({y, flip_cost(y) - ref});
  return out;
}

}  // namespace lrm
