#pragma once

#include <json.hpp>
#include <ostream>
#include <string>

#include "lrm/barrier.hpp"
#include "lrm/dynamics.hpp"
#include "lrm/fieldtheory.hpp"
#include "lrm/kernels.hpp"
#include "lrm/lattice.hpp"

namespace lrm {

using Json = nlohmann::json;

// Shortest round-trip text for a double; infinities print as "inf".
std::string format_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
// Creates the directory (and parents) or throws IoError.
void ensure_directory(const std::string& path);

// {"L", "occupations", "chain", "winding"}; bit vectors as 0/1 strings.
Json config_to_json(const AnyonConfig& config);
AnyonConfig config_from_json(const Json& j);

Json kernel_params_to_json(const KernelParams& p, double j0);

/// First line "# " + JSON parameter record, then "dx,dy,J" rows for
/// translation-invariant kernels or "p,q,J" rows otherwise.
void write_kernel_csv(std::ostream& os, const InteractionKernel& kernel);

Json barrier_to_json(const BarrierResult& result, const InteractionKernel& kernel);

// Rows "t,bond,dE,accepted".
void write_trajectory_csv(std::ostream& os, const TrajectoryLog& log);
Json checkpoints_to_json(const TrajectoryLog& log);

// Rows "x,y,phi" on the source plane z = n/2.
void write_field_slice_csv(std::ostream& os, const ScalarFieldGrid& grid);

}  // namespace lrm
