#pragma once

#include "tlfleet/network/road_network.hpp"

#include <map>
#include <vector>

namespace tlfleet::rebalance {

using network::RoadNetwork;

struct RebalanceDecision {
  VehicleId vehicle = 0;
  NodeIndex target = 0;
  /// Potential of the target when the decision was made.
  double potential = 0.0;
  /// Shortest path from the vehicle's node to the target, both included.
  std::vector<NodeIndex> route;

  bool moves() const { return route.size() > 1; }
};

struct RebalanceParams {
  std::size_t k_w = 3;
  double k_a = 1.5;
  /// Idle vehicles up to this many hops from a node count as nearby.
  std::size_t proximity_hops = 1;
};

/// Pr(s) / (1 + idle_count) * U_avg(s).
double potential_utility(const RoadNetwork &net, NodeIndex s, std::size_t idle_count);

/// Idle vehicles near each node, given how many idle vehicles stand at each node.
std::vector<std::size_t> nearby_idle_counts(const RoadNetwork &net,
                                            const std::vector<std::size_t> &idle_at,
                                            std::size_t proximity_hops);

/// Scans rings 1..k_w around `position`. A ring's best node (lowest index on
/// ties) replaces the current target when its potential is positive and at
/// least k_a times the target's potential. `idle_at` must not count the
/// deciding vehicle.
RebalanceDecision find_rebalance_target(const RoadNetwork &net, VehicleId vehicle,
                                        NodeIndex position, const std::vector<std::size_t> &idle_at,
                                        const RebalanceParams &params);

struct IdleVehicle {
  VehicleId id;
  NodeIndex node;
};

/// Decides for every vehicle in `vacant`, ascending by id. Each decided vehicle
/// is counted at its target for the vehicles after it. `already_idle_at`
/// counts idle vehicles that are not being decided (for instance those
/// already driving to a rebalancing target, counted at that target).
std::map<VehicleId, RebalanceDecision> run_rebalancing(const RoadNetwork &net,
                                                       std::vector<IdleVehicle> vacant,
                                                       const RebalanceParams &params,
                                                       std::vector<std::size_t> already_idle_at = {});

} // namespace tlfleet::rebalance
