#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "slrc/bounds.hpp"
#include "slrc/config.hpp"
#include "slrc/secrecy.hpp"
#include "slrc/simulator.hpp"

namespace slrc {

// Integers become JSON numbers, other values "num/den" strings.
nlohmann::json rational_json(const Rational& r);

// Bound parameters implied by a deployment (d, β, d_min bound, ...).
BoundParams bound_params(const Deployment& dep);
BoundReport bound_report(const Deployment& dep);

nlohmann::json params_report(const Deployment& dep);
nlohmann::json sweep_report(const SweepReport& rep);
// measure_dmin, MDS certificates and exact repair of every node.
nlohmann::json verify_report(const Deployment& dep, std::uint64_t max_enum, std::uint64_t seed);
nlohmann::json simulation_report(const SimulationReport& rep);

// Flattens nested objects/arrays into "path,value" lines.
std::string to_csv(const nlohmann::json& j);

}  // namespace slrc
