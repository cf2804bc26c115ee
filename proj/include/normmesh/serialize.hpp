#pragma once

#include <json.hpp>

#include "normmesh/bounds.hpp"
#include "normmesh/landau.hpp"
#include "normmesh/meshgen.hpp"
#include "normmesh/polyspace.hpp"

namespace normmesh {

using Json = nlohmann::ordered_json;

Json points_to_json(const Points& points);

/// {degree, ambient_dim, points, log_abs_det, swap_optimal, lagrange_sup, ...}
Json to_json(const NodeSet& nodes);
/// {n, d, p, schedule_c?, nodes, certified_bound, grid_constant, empirical_distortion, seed, grid_size, ...}
Json to_json(const EmbeddingCertificate& cert);
Json to_json(const BoundReport& report);
Json to_json(const TraceRank& rank);

/// Scalar fields only, one "key,value" row each; nested objects use dotted keys.
std::string to_csv(const Json& report);

}  // namespace normmesh
