#pragma once

#include "tlfleet/auction/auction.hpp"
#include "tlfleet/auction/oracle.hpp"
#include "tlfleet/sim/config.hpp"
#include "tlfleet/sim/metrics.hpp"
#include "tlfleet/sim/world.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace tlfleet::sim {

/// One vehicle's view of a dispatch cycle.
struct Bidder {
  VehicleId vehicle;
  /// Cumulative utility U_v so far.
  double utility;
  std::map<RequestId, auction::Offer> offers;
};

struct AssignContext {
  Seconds time;
  double alpha;
  std::optional<double> epsilon;
};

/// Maps requests to vehicles for one cycle. Only bidders with at least one
/// offer and requests with at least one offer are passed in.
using Assigner = std::function<std::map<RequestId, VehicleId>(
    const std::vector<Bidder> &, const std::vector<RequestId> &, const AssignContext &)>;

Assigner auction_assigner(std::optional<std::uint64_t> shuffle_seed = std::nullopt);
/// Throws auction::OracleCapError when a cycle has more than `cap` bidders or requests.
Assigner oracle_assigner(std::size_t cap = 8);

struct CycleRecord {
  Seconds time = 0;
  auction::SigmaTable sigma;
  std::map<RequestId, VehicleId> assignment;
  double epsilon = 0.0;
};

/// Sum of -sigma over the assigned pairs.
double assignment_utility(const auction::SigmaTable &sigma,
                          const std::map<RequestId, VehicleId> &assignment);

struct SimulationOptions {
  Assigner assigner;
  bool record_cycles = false;
  /// Replace the generated request stream (ids must be 0..n-1 by arrival).
  std::optional<std::vector<planner::Request>> requests;
  /// Replace the random start nodes.
  std::optional<std::vector<NodeIndex>> positions;
};

struct SimulationResult {
  MetricsReport metrics;
  World world;
  std::vector<CycleRecord> cycles;
};

/// Deterministic run of one scenario: requests and start positions follow
/// config.seed; every cycle_period seconds the open requests are assigned and
/// committed, then idle vehicles rebalance (if enabled); the world advances
/// one second at a time until the horizon.
SimulationResult run_simulation(const ScenarioConfig &config, const SimulationOptions &options = {});

/// Start nodes for the fleet, uniform over the network.
std::vector<NodeIndex> initial_positions(const ScenarioConfig &config);

} // namespace tlfleet::sim
