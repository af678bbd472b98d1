#include "lrm/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "lrm/decoder.hpp"
#include "lrm/errors.hpp"
#include "lrm/parallel.hpp"

namespace lrm {

namespace {

int default_box(int L) {
  int n = 2;
  while (n < 4 * L) n *= 2;
  return n;
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

void KernelSpec::validate() const {
  if (!std::isfinite(j0)) throw ValidationError("j0 must be finite");
  switch (family) {
    case KernelFamily::power_law:
      if (!(alpha > 0.0)) throw ValidationError("alpha must be positive");
      break;
    case KernelFamily::fourier:
      if (!(epsilon >= 0.0)) throw ValidationError("epsilon must be nonnegative");
      break;
    case KernelFamily::rkky:
      if (!(k > 0.0)) throw ValidationError("RKKY wavenumber must be positive");
      break;
    case KernelFamily::disordered:
      if (!(j_min > 0.0) || j_max < j_min) throw ValidationError("need 0 < j_min <= j_max");
      break;
    case KernelFamily::matrix:
      throw ValidationError("matrix kernels cannot be described by a spec");
    default:
      break;
  }
}

InteractionKernel KernelSpec::build(const TorusGeometry& g) const {
  validate();
  switch (family) {
    case KernelFamily::bare:
      return build_kernel_bare(j0, g);
    case KernelFamily::fourier:
      return build_kernel_fourier(A, FourierSpec{epsilon, box > 0 ? box : default_box(g.size())}, g).with_j0(j0);
    case KernelFamily::power_law:
      return build_kernel_powerlaw(A, alpha, g).with_j0(j0);
    case KernelFamily::rkky:
      return build_kernel_rkky(A, k, g).with_j0(j0);
    case KernelFamily::disordered:
      return build_kernel_disordered(CouplingSampler{j_min, j_max, seed}, g).with_j0(j0);
    default:
      throw ValidationError("unsupported kernel family");
  }
}

Json to_json(const KernelSpec& k) {
  return Json{{"family", to_string(k.family)}, {"j0", k.j0},       {"A", k.A},         {"alpha", k.alpha},
              {"epsilon", k.epsilon},         {"k", k.k},         {"box", k.box},     {"j_min", k.j_min},
              {"j_max", k.j_max},             {"seed", k.seed}};
}

KernelSpec kernel_spec_from_json(const Json& j) {
  try {
    KernelSpec k;
    k.family = kernel_family_from_string(get_or<std::string>(j, "family", "bare"));
    k.j0 = get_or(j, "j0", k.j0);
    k.A = get_or(j, "A", k.A);
    k.alpha = get_or(j, "alpha", k.alpha);
    k.epsilon = get_or(j, "epsilon", k.epsilon);
    k.k = get_or(j, "k", k.k);
    k.box = get_or(j, "box", k.box);
    k.j_min = get_or(j, "j_min", k.j_min);
    k.j_max = get_or(j, "j_max", k.j_max);
    k.seed = get_or<std::uint64_t>(j, "seed", k.seed);
    k.validate();
    return k;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("bad kernel spec: ") + e.what());
  }
}

void ExperimentSpec::validate() const {
  kernel.validate();
  if (L.empty()) throw ValidationError("L list must be nonempty");
  if (beta.empty()) throw ValidationError("beta list must be nonempty");
  for (int l : L)
    if (l < 2) throw ValidationError("every L must be at least 2");
  for (double b : beta)
    if (!(b >= 0.0) || !std::isfinite(b)) throw ValidationError("every beta must be finite and nonnegative");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ValidationError("gamma must be finite and nonnegative");
  if (!(t0 > 0.0)) throw ValidationError("t0 must be positive");
  if (!(checkpoint_ratio > 1.0)) throw ValidationError("checkpoint ratio must exceed 1");
  if (!(t_max >= t0) || !std::isfinite(t_max)) throw ValidationError("t_max must be finite and >= t0");
  if (trials < 8) throw ValidationError("trials per cell must be at least 8");
}

std::vector<double> ExperimentSpec::checkpoints() const {
  std::vector<double> t;
  for (int k = 0;; ++k) {
    const double tk = t0 * std::pow(checkpoint_ratio, k);
    if (tk > t_max) break;
    t.push_back(tk);
  }
  return t;
}

std::vector<CellSpec> ExperimentSpec::cells() const {
  std::vector<CellSpec> out;
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = 0; j < beta.size(); ++j) out.push_back({out.size(), L[i], beta[j]});
  return out;
}

std::uint64_t ExperimentSpec::trial_seed(std::size_t cell, std::size_t trial) const {
  return derive_seed(master_seed, cell, trial);
}

Json to_json(const ExperimentSpec& s) {
  return Json{{"kernel", to_json(s.kernel)},
              {"L", s.L},
              {"beta", s.beta},
              {"gamma", s.gamma},
              {"rule", to_string(s.rule)},
              {"t0", s.t0},
              {"checkpoint_ratio", s.checkpoint_ratio},
              {"t_max", s.t_max},
              {"trials", s.trials},
              {"seed", s.master_seed},
              {"output_dir", s.output_dir},
              {"threads", s.threads}};
}

ExperimentSpec experiment_spec_from_json(const Json& root) {
  const Json& j = root.contains("spec") ? root.at("spec") : root;
  try {
    ExperimentSpec s;
    if (j.contains("kernel")) s.kernel = kernel_spec_from_json(j.at("kernel"));
    s.L = j.at("L").get<std::vector<int>>();
    s.beta = j.at("beta").get<std::vector<double>>();
    s.gamma = get_or(j, "gamma", s.gamma);
    s.rule = acceptance_rule_from_string(get_or<std::string>(j, "rule", "metropolis"));
    s.t0 = get_or(j, "t0", s.t0);
    s.checkpoint_ratio = get_or(j, "checkpoint_ratio", s.checkpoint_ratio);
    s.t_max = get_or(j, "t_max", s.t_max);
    s.trials = get_or<std::size_t>(j, "trials", s.trials);
    s.master_seed = get_or<std::uint64_t>(j, "seed", s.master_seed);
    s.output_dir = get_or<std::string>(j, "output_dir", s.output_dir);
    s.threads = get_or<unsigned>(j, "threads", s.threads);
    s.validate();
    return s;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("bad experiment spec: ") + e.what());
  }
}

TrialResult memory_time_trial(const ExperimentSpec& spec, const CellSpec& cell,
                              std::shared_ptr<const CouplingMatrix> coupling, std::uint64_t seed) {
  const TorusGeometry& g = coupling->geometry();
  if (g.size() != cell.L) throw ValidationError("coupling geometry does not match the cell");
  ThermalParams params;
  params.beta = cell.beta;
  params.gamma = spec.gamma;
  params.rule = spec.rule;
  params.t_max = spec.t_max;
  params.validate();

  TrialResult out;
  out.cell = cell.index;
  out.seed = seed;
  KmcSimulator sim(AnyonConfig::vacuum(g), std::move(coupling), params, seed);
  for (double t : spec.checkpoints()) {
    sim.advance_to(t);
    const DecodeOutcome d = decode(sim.config());
    out.verdicts.push_back({t, d.verdict, sim.config().anyon_count()});
    if (!d.verdict.trivial()) {
      out.tau = t;
      break;
    }
  }
  out.attempts = sim.attempts();
  return out;
}

TrialResult memory_time_trial(const ExperimentSpec& spec, const CellSpec& cell, std::uint64_t seed) {
  const TorusGeometry g(cell.L);
  return memory_time_trial(spec, cell, std::make_shared<const CouplingMatrix>(spec.kernel.build(g)), seed);
}

CellSummary summarize_cell(const CellSpec& cell, std::span<const TrialResult> trials, double t_max,
                           std::uint64_t seed) {
  if (trials.empty()) throw ValidationError("cell has no trials");
  CellSummary s;
  s.cell = cell;
  s.trials = trials.size();
  std::vector<double> taus, clamped;
  for (const auto& t : trials) {
    taus.push_back(t.tau);
    clamped.push_back(std::min(t.tau, t_max));
    if (t.censored()) ++s.censored;
  }
  s.median = median(taus);
  s.median_ci = bootstrap_median_ci(taus, 0.95, 2000, seed);
  s.mean = mean(clamped);
  return s;
}

SizeFit fit_tau_vs_size(std::span<const double> sizes, std::span<const double> taus) {
  if (sizes.size() != taus.size()) throw ValidationError("sizes and taus differ in length");
  if (sizes.size() < 3) throw ValidationError("insufficient data: need three uncensored cells");
  std::vector<double> y, lnL;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] > 0.0) || std::isinf(taus[i])) throw ValidationError("insufficient data: censored or zero tau");
    y.push_back(std::log(taus[i]));
    lnL.push_back(std::log(sizes[i]));
  }
  SizeFit f;
  f.linear = least_squares(sizes, y);
  f.logarithmic = least_squares(lnL, y);
  f.prefers_linear = f.linear.rss <= f.logarithmic.rss;
  return f;
}

LinearFit fit_tau_vs_beta(std::span<const double> betas, std::span<const double> taus) {
  if (betas.size() != taus.size()) throw ValidationError("betas and taus differ in length");
  if (betas.size() < 3) throw ValidationError("insufficient data: need three uncensored cells");
  std::vector<double> y;
  for (double t : taus) {
    if (!(t > 0.0) || std::isinf(t)) throw ValidationError("insufficient data: censored or zero tau");
    y.push_back(std::log(t));
  }
  return least_squares(betas, y);
}

ScalingResult fit_scaling(std::span<const CellSummary> cells) {
  ScalingResult r;
  r.cells.assign(cells.begin(), cells.end());
  std::map<double, std::vector<const CellSummary*>> by_beta;
  std::map<int, std::vector<const CellSummary*>> by_L;
  std::size_t usable = 0;
  for (const auto& c : cells) {
    if (c.median_censored()) {
      r.excluded.push_back(c.cell.index);
      continue;
    }
    if (c.censored > 0) r.flagged.push_back(c.cell.index);
    by_beta[c.cell.beta].push_back(&c);
    by_L[c.cell.L].push_back(&c);
    ++usable;
  }
  if (usable < 3) throw ValidationError("insufficient data: fewer than three uncensored cells");
  for (const auto& [beta, group] : by_beta) {
    if (group.size() < 3) continue;
    std::vector<double> x, y;
    for (const auto* c : group) {
      x.push_back(c->cell.L);
      y.push_back(c->median);
    }
    r.size_fits.emplace_back(beta, fit_tau_vs_size(x, y));
  }
  for (const auto& [L, group] : by_L) {
    if (group.size() < 3) continue;
    std::vector<double> x, y;
    for (const auto* c : group) {
      x.push_back(c->cell.beta);
      y.push_back(c->median);
    }
    r.beta_fits.emplace_back(L, fit_tau_vs_beta(x, y));
  }
  return r;
}

namespace {

Json fit_json(const LinearFit& f) {
  return Json{{"intercept", f.intercept}, {"slope", f.slope}, {"slope_stderr", f.slope_stderr},
              {"rss", f.rss}, {"points", f.points}};
}

Json double_json(double v) { return std::isinf(v) ? Json("inf") : Json(v); }

Json cell_json(const CellSummary& c) {
  return Json{{"cell", c.cell.index},
              {"L", c.cell.L},
              {"beta", c.cell.beta},
              {"trials", c.trials},
              {"censored", c.censored},
              {"censored_fraction", c.censored_fraction()},
              {"median", double_json(c.median)},
              {"median_ci", {double_json(c.median_ci.lo), double_json(c.median_ci.hi)}},
              {"mean_lower_bound", c.mean},
              {"median_censored", c.median_censored()}};
}

}  // namespace

Json to_json(const ScalingResult& r) {
  Json cells = Json::array();
  for (const auto& c : r.cells) cells.push_back(cell_json(c));
  Json size_fits = Json::array();
  for (const auto& [beta, f] : r.size_fits)
    size_fits.push_back({{"beta", beta},
                         {"linear", fit_json(f.linear)},
                         {"logarithmic", fit_json(f.logarithmic)},
                         {"preferred", f.prefers_linear ? "linear" : "logarithmic"}});
  Json beta_fits = Json::array();
  for (const auto& [L, f] : r.beta_fits) beta_fits.push_back({{"L", L}, {"fit", fit_json(f)}});
  return Json{{"cells", cells},         {"excluded_cells", r.excluded}, {"flagged_cells", r.flagged},
              {"size_fits", size_fits}, {"beta_fits", beta_fits}};
}

ExperimentResult execute_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const auto cells = spec.cells();
  std::map<int, std::shared_ptr<const CouplingMatrix>> couplings;
  for (int L : spec.L)
    if (!couplings.count(L)) couplings[L] = std::make_shared<const CouplingMatrix>(spec.kernel.build(TorusGeometry(L)));

  ExperimentResult out;
  const std::size_t total = cells.size() * spec.trials;
  out.trials.resize(total);
  parallel_for(total, spec.threads, [&](std::size_t i) {
    const CellSpec& c = cells[i / spec.trials];
    const std::size_t trial = i % spec.trials;
    TrialResult r = memory_time_trial(spec, c, couplings.at(c.L), spec.trial_seed(c.index, trial));
    r.trial = trial;
    out.trials[i] = std::move(r);
  });
  for (const auto& c : cells) {
    std::span<const TrialResult> slice(out.trials.data() + c.index * spec.trials, spec.trials);
    out.cells.push_back(summarize_cell(c, slice, spec.t_max, derive_seed(spec.master_seed, c.index, ~0ULL)));
  }
  return out;
}

std::string trials_csv(const ExperimentSpec& spec, std::span<const TrialResult> trials) {
  const auto cells = spec.cells();
  std::ostringstream os;
  os << "cell,L,beta,trial,seed,tau,censored\n";
  for (const auto& t : trials) {
    const CellSpec& c = cells.at(t.cell);
    os << t.cell << ',' << c.L << ',' << format_double(c.beta) << ',' << t.trial << ',' << t.seed << ','
       << format_double(t.tau) << ',' << (t.censored() ? 1 : 0) << "\n";
  }
  return os.str();
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  ensure_directory(spec.output_dir);
  ExperimentResult out = execute_experiment(spec);
  const std::string dir = spec.output_dir + "/";

  auto attempt = [&](const std::string& name, auto&& write) {
    try {
      write(dir + name);
    } catch (const IoError& e) {
      out.partial = true;
      out.errors.push_back(e.what());
    }
  };

  attempt("trials.csv", [&](const std::string& p) { write_text_file(p, trials_csv(spec, out.trials)); });
  Json files = Json::array({"trials.csv"});
  for (const auto& c : out.cells) {
    Json j = cell_json(c);
    Json records = Json::array();
    for (std::size_t k = 0; k < spec.trials; ++k) {
      const TrialResult& t = out.trials[c.cell.index * spec.trials + k];
      Json verdicts = Json::array();
      for (const auto& v : t.verdicts)
        verdicts.push_back({{"t", v.t}, {"verdict", {v.verdict.z1, v.verdict.z2}}, {"anyons", v.anyons}});
      records.push_back({{"trial", t.trial}, {"seed", t.seed}, {"tau", double_json(t.tau)},
                         {"attempts", t.attempts}, {"verdicts", verdicts}});
    }
    j["trial_records"] = records;
    const std::string name = "cell_" + std::to_string(c.cell.index) + ".json";
    attempt(name, [&](const std::string& p) { write_json_file(p, j); });
    files.push_back(name);
  }

  Json scaling;
  try {
    scaling = to_json(fit_scaling(out.cells));
  } catch (const ValidationError& e) {
    scaling = Json{{"error", e.what()}};
  }
  attempt("fit.json", [&](const std::string& p) { write_json_file(p, scaling); });
  files.push_back("fit.json");

  Json trial_index = Json::array();
  for (const auto& t : out.trials) trial_index.push_back({{"cell", t.cell}, {"trial", t.trial}, {"seed", t.seed}});
  Json manifest{{"spec", to_json(spec)},
                {"checkpoints", spec.checkpoints()},
                {"seed_derivation", "derive_seed(master_seed, cell, trial)"},
                {"time_units", "1/gamma per bond: each bond attempts a flip at rate gamma"},
                {"trials", trial_index},
                {"files", files},
                {"partial", out.partial},
                {"errors", out.errors}};
  write_json_file(dir + "manifest.json", manifest);
  if (out.partial) throw IoError("partial results written; failed files: " + std::to_string(out.errors.size()));
  return out;
}

}  // namespace lrm
