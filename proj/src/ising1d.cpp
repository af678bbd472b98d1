#include "lrm/ising1d.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>

#include "lrm/errors.hpp"
#include "lrm/parallel.hpp"
#include "lrm/rng.hpp"

namespace lrm {

double IsingChain::j_min() const { return *std::min_element(J.begin(), J.end()); }
double IsingChain::j_max() const { return *std::max_element(J.begin(), J.end()); }
double IsingChain::j_bar() const { return 0.5 * (j_min() + j_max()); }

void IsingChain::validate() const {
  if (J.size() < 2) throw ValidationError("Ising chain needs at least two spins");
  for (double j : J)
    if (!(j > 0.0) || !std::isfinite(j)) throw ValidationError("Ising couplings must be positive");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ValidationError("beta must be nonnegative");
}

IsingChain uniform_chain(std::size_t L, double J, double beta) {
  IsingChain c{std::vector<double>(L, J), beta};
  c.validate();
  return c;
}

IsingChain alternating_chain(std::size_t L, double j_a, double j_b, double beta) {
  if (L % 2 != 0) throw ValidationError("alternating chain needs even L");
  IsingChain c;
  c.beta = beta;
  c.J.resize(L);
  for (std::size_t i = 0; i < L; ++i) c.J[i] = i % 2 == 0 ? j_a : j_b;
  c.validate();
  return c;
}

namespace {

int spin(std::uint64_t state, std::size_t i) { return (state >> i) & 1u ? -1 : 1; }

void require_small(const IsingChain& chain) {
  chain.validate();
  if (chain.size() > 12) throw ValidationError("exact Glauber analysis limited to L <= 12");
}

}  // namespace

double ising_energy(const IsingChain& chain, std::uint64_t state) {
  const std::size_t L = chain.size();
  double e = 0.0;
  for (std::size_t i = 0; i < L; ++i) e -= chain.J[i] * spin(state, i) * spin(state, (i + 1) % L);
  return e;
}

double glauber_rate(const IsingChain& chain, std::uint64_t state, std::size_t i) {
  const std::size_t L = chain.size();
  const std::size_t left = (i + L - 1) % L, right = (i + 1) % L;
  const double local = chain.J[left] * spin(state, left) + chain.J[i] * spin(state, right);
  const double dE = 2.0 * spin(state, i) * local;
  return 1.0 / (1.0 + std::exp(chain.beta * dE));
}

double ising_first_passage(const IsingChain& chain, double t_cap, std::uint64_t seed) {
  const std::size_t L = chain.size();
  // Acceptance per spin for each (left, self, right) alignment pattern.
  std::vector<std::array<double, 8>> accept(L);
  for (std::size_t i = 0; i < L; ++i) {
    const double jl = chain.J[(i + L - 1) % L], jr = chain.J[i];
    for (int k = 0; k < 8; ++k) {
      const int sl = k & 1 ? -1 : 1, si = k & 2 ? -1 : 1, sr = k & 4 ? -1 : 1;
      const double dE = 2.0 * si * (jl * sl + jr * sr);
      accept[i][k] = 1.0 / (1.0 + std::exp(chain.beta * dE));
    }
  }
  std::vector<int> s(L, 1);
  long long m = static_cast<long long>(L);
  Rng rng(seed);
  double t = 0.0;
  const double rate = static_cast<double>(L);
  for (;;) {
    t += exponential(rng, rate);
    if (t > t_cap) return kCensored;
    const std::size_t i = uniform_index(rng, L);
    const std::size_t l = (i + L - 1) % L, r = (i + 1) % L;
    const int k = (s[l] < 0 ? 1 : 0) | (s[i] < 0 ? 2 : 0) | (s[r] < 0 ? 4 : 0);
    if (uniform01(rng) < accept[i][k]) {
      s[i] = -s[i];
      m += 2 * s[i];
      if (m <= 0) return t;
    }
  }
}

IsingMemoryStats ising_memory_time(const IsingChain& chain, std::size_t trials, std::uint64_t seed,
                                   const IsingRunOptions& options) {
  chain.validate();
  if (chain.beta * chain.j_max() > 4.0) throw ValidationError("beta * J_max exceeds 4");
  if (trials == 0) throw ValidationError("need at least one trial");
  if (!(options.t_cap > 0.0)) throw ValidationError("time cap must be positive");
  IsingMemoryStats out;
  out.taus.assign(trials, 0.0);
  out.seeds.resize(trials);
  for (std::size_t k = 0; k < trials; ++k) out.seeds[k] = derive_seed(seed, chain.size(), k);
  parallel_for(trials, options.threads,
               [&](std::size_t k) { out.taus[k] = ising_first_passage(chain, options.t_cap, out.seeds[k]); });

  out.censored = static_cast<std::size_t>(std::count_if(out.taus.begin(), out.taus.end(),
                                                        [](double t) { return std::isinf(t); }));
  out.median = median(out.taus);
  if (std::isinf(out.median)) throw HorizonExceeded(out.censored);
  out.median_ci = bootstrap_median_ci(out.taus, 0.95, options.bootstrap_resamples, seed);
  std::vector<double> clamped(out.taus);
  for (auto& t : clamped) t = std::min(t, options.t_cap);
  out.mean = mean(clamped);
  out.mean_ci = bootstrap_mean_ci(clamped, 0.95, options.bootstrap_resamples, seed);
  return out;
}

std::vector<double> glauber_generator(const IsingChain& chain) {
  require_small(chain);
  const std::size_t L = chain.size(), n = std::size_t{1} << L;
  std::vector<double> q(n * n, 0.0);
  for (std::uint64_t s = 0; s < n; ++s) {
    double out = 0.0;
    for (std::size_t i = 0; i < L; ++i) {
      const double r = glauber_rate(chain, s, i);
      q[s * n + (s ^ (std::uint64_t{1} << i))] = r;
      out += r;
    }
    q[s * n + s] = -out;
  }
  return q;
}

std::vector<double> glauber_stationary(const IsingChain& chain) {
  const std::vector<double> q = glauber_generator(chain);
  const std::size_t n = std::size_t{1} << chain.size();
  // Solve pi Q = 0 with the last balance equation replaced by normalization.
  Eigen::MatrixXd a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = q[j * n + i];
  a.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  const Eigen::VectorXd pi = a.fullPivLu().solve(b);
  return std::vector<double>(pi.data(), pi.data() + n);
}

std::vector<double> ising_gibbs(const IsingChain& chain) {
  require_small(chain);
  const std::size_t n = std::size_t{1} << chain.size();
  std::vector<double> p(n);
  double emin = 0.0;
  for (std::uint64_t s = 0; s < n; ++s) emin = std::min(emin, ising_energy(chain, s));
  double z = 0.0;
  for (std::uint64_t s = 0; s < n; ++s) z += p[s] = std::exp(-chain.beta * (ising_energy(chain, s) - emin));
  for (auto& v : p) v /= z;
  return p;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw ValidationError("distribution sizes differ");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

}  // namespace lrm
