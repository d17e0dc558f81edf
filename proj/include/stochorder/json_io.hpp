#pragma once

#include <string>

#include <json.hpp>

#include "stochorder/dists.hpp"
#include "stochorder/mcsim.hpp"

namespace stochorder {

using ordered_json = nlohmann::ordered_json;

/// Component schema: {"family":"pgw"|"gg", shape keys per family
/// ("p"/"q" or "alpha"/"beta"), "lambda", optional "shape_exp" (default 1).
/// Unknown keys are rejected.
ordered_json component_to_json(const ComponentSpec& c);
ComponentSpec component_from_json(const ordered_json& j);

/// System schema: {"components":[...]} ; a bare array is also accepted on read.
ordered_json system_to_json(const ParallelSystem& s);
ParallelSystem system_from_json(const ordered_json& j);

ParallelSystem load_system_file(const std::string& path);

/// Simulation config: {"system":..., "n_samples":..., "seed":...,
/// optional "grid":{"lo","hi","points"}, optional "threads"}.
SimConfig sim_config_from_json(const ordered_json& j);
SimConfig load_sim_config_file(const std::string& path);

}  // namespace stochorder
