#pragma once

#include "tlfleet/network/road_network.hpp"

#include <optional>
#include <vector>

namespace tlfleet::network {

/// Minimal total edge weight from `from` to `to`; nullopt when unreachable.
std::optional<Seconds> shortest_travel_time(const RoadNetwork &net, NodeIndex from, NodeIndex to);

/// Node sequence of a minimal-weight path, including both endpoints.
std::optional<std::vector<NodeIndex>> shortest_path(const RoadNetwork &net, NodeIndex from,
                                                    NodeIndex to);

/// Single-source travel times; nullopt entries are unreachable.
std::vector<std::optional<Seconds>> travel_times_from(const RoadNetwork &net, NodeIndex from);

/// Hop counts along directed edges; nullopt entries are unreachable.
std::vector<std::optional<std::size_t>> hop_distances(const RoadNetwork &net, NodeIndex from);

/// All-pairs travel times, computed once.
class DistanceTable {
public:
  explicit DistanceTable(const RoadNetwork &net);

  std::optional<Seconds> at(NodeIndex from, NodeIndex to) const {
    const Seconds d = table_[static_cast<std::size_t>(from) * n_ + to];
    if (d < 0)
      return std::nullopt;
    return d;
  }

private:
  std::size_t n_;
  std::vector<Seconds> table_;
};

/// ring[i] holds the nodes at hop distance i+1 from the center, ascending.
using DegreeRings = std::vector<std::vector<NodeIndex>>;

DegreeRings neighbor_rings(const RoadNetwork &net, NodeIndex center, std::size_t k_w);

} // namespace tlfleet::network
