#pragma once

#include "tlfleet/network/road_network.hpp"

#include <filesystem>
#include <json.hpp>

namespace tlfleet::network {

/// Map document:
///   { "alphabet": [names...],
///     "nodes": [ {"id", "labels": [...], "arrival_prob"?, "avg_request_utility"?}, ... ],
///     "edges": [ {"from", "to", "weight"}, ... ] }
RoadNetwork load_network(const nlohmann::json &doc);
RoadNetwork load_network_file(const std::filesystem::path &path);

nlohmann::json to_json(const RoadNetwork &net);
void save_network_file(const RoadNetwork &net, const std::filesystem::path &path);

} // namespace tlfleet::network
