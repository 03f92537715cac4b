#pragma once

#include <nlohmann/json_fwd.hpp>

#include <string>

#include "green/elliptic.hpp"
#include "green/mercer.hpp"
#include "green/partition.hpp"
#include "green/reconstruct.hpp"

namespace green {

using Json = nlohmann::json;

/// %.17g — round-trip-exact text form of a double for CSV output.
std::string format_g17(double value);

Json to_json(const Box& box);
Box box_from_json(const Json& j);

Json to_json(const Grid& grid);
Grid grid_from_json(const Json& j);

Json to_json(const CovKernelSpec& kernel);
CovKernelSpec kernel_from_json(const Json& j, const Grid& grid);

Json to_json(const MercerBasis& basis);
MercerBasis mercer_from_json(const Json& j);

Json to_json(const HsOperator& op);
HsOperator hsop_from_json(const Json& j);

/// Partition metadata plus the admissible pair list and counts. Rebuildable
/// from (domain, levels, rho) alone.
Json to_json(const AdmissiblePartition& part);

/// Model serialization: grid, kernel, config and per-block factors; the
/// partition is rebuilt deterministically on load.
Json to_json(const HierGreen& g);
HierGreen hiergreen_from_json(const Json& j);

Json to_json(const ErrorReport& report);

void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

}  // namespace green
