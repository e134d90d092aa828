#pragma once

#include "tlfleet/network/paths.hpp"
#include "tlfleet/planner/product.hpp"
#include "tlfleet/planner/request.hpp"

#include <optional>
#include <vector>

namespace tlfleet::planner {

/// A request the vehicle already serves or has committed to serve.
/// For requests on board, `state` is the automaton progress after consuming
/// the label of the origin node. Requests not yet picked up start from the
/// initial state and board on the first visit of their pick-up node.
struct Commitment {
  const Request *request;
  Dfa::State state;
  bool picked_up;
};

/// Where and when a vehicle can start a new plan: its current node when at
/// rest, or the end of the edge it is traversing.
struct PlanningOrigin {
  NodeIndex node = 0;
  Seconds time = 0;
  int free_seats = 0;
  std::vector<Commitment> commitments;
};

struct PlannedVisit {
  RequestId request;
  Seconds t_pick;
  Seconds t_drop;
};

struct ServicePlan {
  RequestId request_id = 0;
  Route route;
  Seconds t_asgmt = 0;
  Seconds t_pick = 0;
  Seconds t_drop = 0;
  Seconds sigma = 0; ///< t_drop - t_asgmt
  Seconds delay = 0; ///< t_drop - t_req - t*
  /// Expected pick-up and drop-off of every request served by the route,
  /// commitments first, the candidate last.
  std::vector<PlannedVisit> schedule;
};

/// Joint route for the candidate and every commitment, checked against the
/// waiting and delay bounds of all of them. nullopt when the vehicle lacks
/// seats, cannot reach the pick-up in time, or the shortest joint route breaks
/// a bound. `distances` (optional) prunes hopeless candidates early.
std::optional<ServicePlan> evaluate_service_plan(const RoadNetwork &net,
                                                 const PlanningOrigin &origin, const Request &r,
                                                 Seconds now,
                                                 const network::DistanceTable *distances = nullptr);

} // namespace tlfleet::planner
