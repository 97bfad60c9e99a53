#pragma once

#include <filesystem>
#include <json.hpp>

#include "joinery/coupling.hpp"
#include "joinery/partition.hpp"
#include "joinery/system.hpp"

namespace joinery {

using Json = nlohmann::json;

// {"n": int, "weights": ["1/4", ...], "maps": [[int, ...], ...]}
Json system_to_json(const FiniteSystem& sys);
SystemData system_data_from_json(const Json& j);
SystemPtr system_from_json(const Json& j);

// {"label": [int, ...]}
Json partition_to_json(const Partition& p);
Partition partition_from_json(SystemPtr sys, const Json& j);

// {"re": [...], "im": [...]} for Gaussian-rational values,
// {"order": L, "coeffs": [["p/q", ...], ...]} for other cyclotomic values,
// {"float": [...]} with numbers or [re, im] pairs for float mode.
Json observable_to_json(const Observable& f);
Observable observable_from_json(SystemPtr sys, const Json& j);

// {"components": [...], "masses": [{"tuple": [...], "mass": "p/q"}]}.
// Components are written inline; on input each entry may be an inline
// system object or a file path resolved against base_dir.
Json coupling_to_json(const Coupling& c);
Coupling coupling_from_json(const Json& j, const std::filesystem::path& base_dir);

Json load_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j,
                     bool pretty);

}  // namespace joinery
