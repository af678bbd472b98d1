#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lrm/barrier.hpp"
#include "lrm/errors.hpp"
#include "lrm/fieldtheory.hpp"
#include "lrm/harness.hpp"
#include "lrm/io.hpp"
#include "lrm/ising1d.hpp"

namespace {

using lrm::Json;

struct CommonFlags {
  std::string spec;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  unsigned threads = 0;
  double t_max = 0.0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--spec", f.spec, "JSON spec file");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--seed", f.seed, "master seed")->each([&f](const std::string&) { f.seed_set = true; });
  cmd->add_option("--threads", f.threads, "worker threads (0 = auto)");
  cmd->add_option("--t-max", f.t_max, "time horizon");
}

Json load_spec(const CommonFlags& f) {
  if (f.spec.empty()) throw lrm::ValidationError("--spec is required");
  return lrm::read_json_file(f.spec);
}

std::string out_dir(const CommonFlags& f, const std::string& fallback) {
  const std::string dir = f.out.empty() ? fallback : f.out;
  lrm::ensure_directory(dir);
  return dir;
}

int simulate(const CommonFlags& f) {
  lrm::ExperimentSpec spec = lrm::experiment_spec_from_json(load_spec(f));
  if (!f.out.empty()) spec.output_dir = f.out;
  if (f.seed_set) spec.master_seed = f.seed;
  if (f.threads) spec.threads = f.threads;
  if (f.t_max > 0.0) spec.t_max = f.t_max;
  spec.validate();
  const auto result = lrm::run_experiment(spec);
  for (const auto& c : result.cells)
    std::cout << "cell " << c.cell.index << " L=" << c.cell.L << " beta=" << c.cell.beta
              << " median=" << lrm::format_double(c.median) << " censored=" << c.censored << "/" << c.trials << "\n";
  std::cout << "wrote " << spec.output_dir << "/manifest.json\n";
  return 0;
}

lrm::InteractionKernel kernel_from(const Json& j) {
  const int L = j.at("L").get<int>();
  const lrm::KernelSpec k = lrm::kernel_spec_from_json(j.contains("kernel") ? j.at("kernel") : j);
  return k.build(lrm::TorusGeometry(L));
}

int barrier(const CommonFlags& f) {
  const Json j = load_spec(f);
  const auto kernel = kernel_from(j);
  const Json out = lrm::barrier_to_json(lrm::energy_barrier(kernel), kernel);
  if (f.out.empty()) {
    std::cout << out.dump(2) << "\n";
  } else {
    lrm::write_json_file(out_dir(f, ".") + "/barrier.json", out);
  }
  return 0;
}

int kernel(const CommonFlags& f) {
  const auto k = kernel_from(load_spec(f));
  if (f.out.empty()) {
    lrm::write_kernel_csv(std::cout, k);
  } else {
    std::ostringstream os;
    lrm::write_kernel_csv(os, k);
    lrm::write_text_file(out_dir(f, ".") + "/kernel.csv", os.str());
  }
  return 0;
}

int field(const CommonFlags& f) {
  const Json j = load_spec(f);
  const std::string mode = j.value("mode", "disk");
  const int n = j.value("n", 64);
  const double A = j.value("A", 1.0), mass2 = j.value("mass2", 0.0);
  Json out{{"mode", mode}, {"n", n}, {"A", A}, {"mass2", mass2}};
  std::string slice;
  if (mode == "disk" || mode == "point") {
    lrm::ScalarFieldGrid grid = lrm::ScalarFieldGrid::make(n, mass2, A);
    const double w0 = j.value("w0", 1.0);
    if (mode == "disk") {
      const double diameter = j.value("diameter", 8.0);
      if (n < 2 * diameter) throw lrm::ValidationError("box must exceed twice the source diameter");
      grid.set_disk_source(0.5 * diameter, w0);
      out["diameter"] = diameter;
    } else {
      grid.set_point_source(w0);
    }
    const auto rep = lrm::solve_static_field(grid);
    const auto e = lrm::energy_functional(grid);
    out["iterations"] = rep.iterations;
    out["relative_residual"] = rep.relative_residual;
    out["energy_surface"] = e.surface;
    out["energy_volume"] = e.volume;
    out["phi_center"] = grid.field_at(grid.center(), grid.center(), grid.center());
    if (mode == "disk") out["mu"] = 2.0 * A * out["phi_center"].get<double>();
    std::ostringstream os;
    lrm::write_field_slice_csv(os, grid);
    slice = os.str();
  } else if (mode == "goldstone") {
    const auto g = lrm::goldstone_contact_energy(n, j.value("radius", 8.0), j.value("width", 2.0), A);
    out["field"] = g.field;
    out["contact"] = g.contact;
    out["per_axis"] = g.per_axis;
  } else {
    throw lrm::ValidationError("unknown field mode '" + mode + "'");
  }
  if (f.out.empty()) {
    std::cout << out.dump(2) << "\n";
  } else {
    const std::string dir = out_dir(f, ".");
    lrm::write_json_file(dir + "/field.json", out);
    if (!slice.empty()) lrm::write_text_file(dir + "/field_slice.csv", slice);
  }
  return 0;
}

int ising1d(const CommonFlags& f) {
  const Json j = load_spec(f);
  const std::string kind = j.value("disorder", "uniform");
  const auto sizes = j.value("L", std::vector<int>{64});
  const auto betas = j.value("beta", std::vector<double>{1.0, 1.5, 2.0, 2.5});
  const std::size_t trials = j.value("trials", std::size_t{64});
  const std::uint64_t seed = f.seed_set ? f.seed : j.value("seed", std::uint64_t{1});
  lrm::IsingRunOptions opt;
  opt.t_cap = f.t_max > 0.0 ? f.t_max : j.value("t_cap", opt.t_cap);
  opt.threads = f.threads;

  std::ostringstream csv;
  csv << "beta,L,seed,trial,tau\n";
  Json summary{{"disorder", kind}, {"runs", Json::array()}, {"fits", Json::array()}};
  for (int L : sizes) {
    std::vector<std::vector<double>> samples;
    double jbar = 0.0;
    for (double beta : betas) {
      const lrm::IsingChain chain = kind == "alternating"
                                        ? lrm::alternating_chain(L, j.value("j_a", 0.5), j.value("j_b", 1.5), beta)
                                        : lrm::uniform_chain(L, j.value("J", 1.0), beta);
      jbar = chain.j_bar();
      const auto stats = lrm::ising_memory_time(chain, trials, lrm::derive_seed(seed, static_cast<std::uint64_t>(beta * 1e6)), opt);
      for (std::size_t k = 0; k < trials; ++k)
        csv << lrm::format_double(beta) << ',' << L << ',' << stats.seeds[k] << ',' << k << ','
            << lrm::format_double(stats.taus[k]) << "\n";
      summary["runs"].push_back({{"L", L},
                                 {"beta", beta},
                                 {"median", stats.median},
                                 {"median_ci", {stats.median_ci.lo, stats.median_ci.hi}},
                                 {"mean", stats.mean},
                                 {"censored", stats.censored}});
      samples.push_back(stats.taus);
    }
    if (betas.size() >= 2) {
      const auto est = lrm::log_median_slope(betas, samples, 0.95, 1000, seed);
      summary["fits"].push_back({{"L", L},
                                 {"j_bar", jbar},
                                 {"slope", est.fit.slope},
                                 {"slope_ci", {est.ci.lo, est.ci.hi}},
                                 {"slope_over_2jbar", est.fit.slope / (2.0 * jbar)}});
    }
  }
  if (f.out.empty()) {
    std::cout << summary.dump(2) << "\n";
  } else {
    const std::string dir = out_dir(f, ".");
    lrm::write_text_file(dir + "/ising1d.csv", csv.str());
    lrm::write_json_file(dir + "/ising1d.json", summary);
  }
  return 0;
}

// Rebuilds cell summaries and fits from a result directory.
int fit(const CommonFlags& f) {
  if (f.out.empty()) throw lrm::ValidationError("--out must name a result directory");
  const Json manifest = lrm::read_json_file(f.out + "/manifest.json");
  const lrm::ExperimentSpec spec = lrm::experiment_spec_from_json(manifest);
  std::istringstream in(lrm::read_text_file(f.out + "/trials.csv"));
  std::string line;
  std::getline(in, line);
  std::vector<lrm::TrialResult> trials;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell, L, beta, trial, seed, tau;
    std::getline(row, cell, ',');
    std::getline(row, L, ',');
    std::getline(row, beta, ',');
    std::getline(row, trial, ',');
    std::getline(row, seed, ',');
    std::getline(row, tau, ',');
    lrm::TrialResult t;
    try {
      t.cell = std::stoul(cell);
      t.trial = std::stoul(trial);
      t.seed = std::stoull(seed);
      t.tau = tau == "inf" ? lrm::kCensored : std::stod(tau);
    } catch (const std::exception&) {
      throw lrm::IoError("malformed trials.csv row: " + line);
    }
    trials.push_back(t);
  }
  const auto cells = spec.cells();
  std::vector<lrm::CellSummary> summaries;
  for (const auto& c : cells) {
    std::vector<lrm::TrialResult> mine;
    for (const auto& t : trials)
      if (t.cell == c.index) mine.push_back(t);
    if (mine.empty()) throw lrm::IoError("no trials recorded for cell " + std::to_string(c.index));
    summaries.push_back(lrm::summarize_cell(c, mine, spec.t_max, lrm::derive_seed(spec.master_seed, c.index, ~0ULL)));
  }
  const Json out = lrm::to_json(lrm::fit_scaling(summaries));
  lrm::write_json_file(f.out + "/fit.json", out);
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Long-range anyon memory simulator"};
  app.require_subcommand(1);
  CommonFlags flags;
  struct Entry {
    const char* name;
    const char* help;
    int (*run)(const CommonFlags&);
  };
  const Entry entries[] = {
      {"simulate", "run a memory-time experiment from a spec", simulate},
      {"barrier", "exact energy barrier for a kernel on a small torus", barrier},
      {"kernel", "dump a kernel table as CSV", kernel},
      {"field", "continuum field-theory computations", field},
      {"ising1d", "disordered Ising chain benchmark", ising1d},
      {"fit", "refit persisted results", fit},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> cmds;
  for (const auto& e : entries) {
    CLI::App* cmd = app.add_subcommand(e.name, e.help);
    add_common(cmd, flags);
    cmds.emplace_back(cmd, &e);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    for (const auto& [cmd, e] : cmds)
      if (cmd->parsed()) return e->run(flags);
  } catch (const lrm::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lrm::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const lrm::HorizonExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
