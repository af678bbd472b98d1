#include "lrm/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lrm/errors.hpp"

namespace lrm {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed for '" + path + "'");
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

Json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw IoError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec || !std::filesystem::is_directory(path))
    throw IoError("cannot create output directory '" + path + "'");
}

Json config_to_json(const AnyonConfig& config) {
  return Json{{"L", config.geometry().size()},
              {"occupations", to_bitstring(config.occupations())},
              {"chain", to_bitstring(config.chain())},
              {"winding", {config.winding().z1, config.winding().z2}}};
}

AnyonConfig config_from_json(const Json& j) {
  try {
    const TorusGeometry g(j.at("L").get<int>());
    const auto w = j.at("winding");
    if (!w.is_array() || w.size() != 2) throw ValidationError("winding must be a pair");
    LogicalClass c{static_cast<std::uint8_t>(w[0].get<int>() & 1), static_cast<std::uint8_t>(w[1].get<int>() & 1)};
    return AnyonConfig::from_parts(g, from_bitstring(j.at("occupations").get<std::string>()),
                                   from_bitstring(j.at("chain").get<std::string>()), c);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("bad config record: ") + e.what());
  }
}

Json kernel_params_to_json(const KernelParams& p, double j0) {
  Json j{{"family", to_string(p.family)}, {"j0", j0}};
  switch (p.family) {
    case KernelFamily::fourier:
      j["A"] = p.A;
      j["epsilon"] = p.epsilon;
      j["box"] = p.box;
      break;
    case KernelFamily::power_law:
      j["A"] = p.A;
      j["alpha"] = p.alpha;
      break;
    case KernelFamily::rkky:
      j["A"] = p.A;
      j["k"] = p.k;
      break;
    case KernelFamily::disordered:
      j["seed"] = p.seed;
      j["j_min"] = p.j_min;
      j["j_max"] = p.j_max;
      j["j_mean"] = p.j_mean;
      break;
    default:
      break;
  }
  return j;
}

void write_kernel_csv(std::ostream& os, const InteractionKernel& kernel) {
  const TorusGeometry& g = kernel.geometry();
  Json header = kernel_params_to_json(kernel.params(), kernel.j0());
  header["L"] = g.size();
  os << "# " << header.dump() << "\n";
  const int L = g.size();
  if (kernel.translation_invariant()) {
    os << "dx,dy,J\n";
    for (int dy = 0; dy < L; ++dy)
      for (int dx = 0; dx < L; ++dx) os << dx << ',' << dy << ',' << format_double(kernel.at(dx, dy)) << "\n";
  } else {
    os << "p,q,J\n";
    const std::size_t n = g.num_plaquettes();
    for (PlaquetteId p = 0; p < n; ++p)
      for (PlaquetteId q = 0; q < n; ++q) os << p << ',' << q << ',' << format_double(kernel.coupling(p, q)) << "\n";
  }
}

Json barrier_to_json(const BarrierResult& result, const InteractionKernel& kernel) {
  return Json{{"L", kernel.geometry().size()},
              {"kernel", kernel_params_to_json(kernel.params(), kernel.j0())},
              {"barrier", result.barrier},
              {"reached", {result.reached.z1, result.reached.z2}},
              {"witness", result.witness},
              {"states_settled", result.states_settled}};
}

void write_trajectory_csv(std::ostream& os, const TrajectoryLog& log) {
  os << "t,bond,dE,accepted\n";
  for (const auto& e : log.events)
    os << format_double(e.t) << ',' << e.bond << ',' << format_double(e.dE) << ',' << (e.accepted ? 1 : 0) << "\n";
}

Json checkpoints_to_json(const TrajectoryLog& log) {
  Json cps = Json::array();
  for (const auto& c : log.checkpoints) {
    char digest[24];
    std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(c.digest));
    cps.push_back({{"t", c.t}, {"digest", digest}, {"anyons", c.anyons}});
  }
  return Json{{"seed", log.seed},         {"trial", log.trial},       {"t_end", log.t_end},
              {"attempts", log.attempts}, {"accepted", log.accepted}, {"final_energy", log.final_energy},
              {"checkpoints", cps}};
}

void write_field_slice_csv(std::ostream& os, const ScalarFieldGrid& grid) {
  const int c = grid.center();
  os << "x,y,phi\n";
  for (int y = 0; y < grid.n; ++y)
    for (int x = 0; x < grid.n; ++x) os << x << ',' << y << ',' << format_double(grid.field_at(x, y, c)) << "\n";
}

}  // namespace lrm
