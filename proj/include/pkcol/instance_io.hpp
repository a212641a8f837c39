#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "pkcol/graph.hpp"

namespace pkcol {

// Instance format: {"n": int, "k": int, "edges": [{"u": int, "v": int, "pi": [int, ...]}]}
// Edges keep their stored order in both directions.

nlohmann::json instance_to_json(const DecoratedGraph& g);
DecoratedGraph instance_from_json(const nlohmann::json& j);

std::string dump_instance(const DecoratedGraph& g);
DecoratedGraph parse_instance(const std::string& text);

void save_instance(const std::filesystem::path& path, const DecoratedGraph& g);
DecoratedGraph load_instance(const std::filesystem::path& path);

}  // namespace pkcol
