#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ctxminer/types.hpp"

namespace ctxminer {

// Canonical JSON everywhere: UTF-8, lexicographic key order, no
// insignificant whitespace, optional fields omitted when absent. This is
// what makes golden-file tests byte-stable.

nlohmann::json message_to_json(const Message& m);
Message message_from_json(const nlohmann::json& j);

nlohmann::json trajectory_to_json(const Trajectory& t);
Trajectory trajectory_from_json(const nlohmann::json& j);

// One JSONL record. parse validates all trajectory invariants;
// parse(serialize(t)) == t.
Trajectory parse_trajectory(std::string_view line);
std::string serialize_trajectory(const Trajectory& t);

// Whole-file helpers. Errors are prefixed "path:line:".
std::vector<Trajectory> read_trajectory_file(const std::filesystem::path& path);
void write_trajectory_file(const std::filesystem::path& path,
                           const std::vector<Trajectory>& trajectories);

}  // namespace ctxminer
