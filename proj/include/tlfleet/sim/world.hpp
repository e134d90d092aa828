#pragma once

#include "tlfleet/planner/product.hpp"
#include "tlfleet/planner/request.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tlfleet::sim {

enum class RequestStatus { Active, InProgress, Completed, Expired };
enum class VehicleStatus { Vacant, Available, Occupied, Rebalancing };

std::string_view status_name(RequestStatus s);
std::string_view status_name(VehicleStatus s);

struct RequestRecord {
  planner::Request request;
  RequestStatus status = RequestStatus::Active;
  std::optional<VehicleId> vehicle;
  std::optional<Seconds> t_asgmt;
  std::optional<Seconds> t_pick;
  std::optional<Seconds> t_drop;

  /// t_drop - t_asgmt once completed.
  std::optional<Seconds> sigma() const;
};

struct Onboard {
  RequestId request;
  scltl::Dfa::State state;
  int seats;
};

struct VehicleState {
  VehicleId id = 0;
  NodeIndex node = 0;
  int capacity = 1;
  std::vector<Onboard> onboard;
  /// Won but not yet picked up.
  std::vector<RequestId> committed;
  /// Route in execution; nodes[leg] is the next node to reach.
  planner::Route route;
  std::size_t leg = 0;
  bool rebalancing = false;
  /// Seat-seconds of carried passengers.
  Seconds utility = 0;

  int seats_onboard() const;
  /// c_v: free seats right now.
  int available() const { return capacity - seats_onboard(); }
  bool moving() const { return leg < route.nodes.size(); }
  VehicleStatus status() const;
};

struct Event {
  Seconds t;
  std::string kind;
  std::optional<VehicleId> vehicle;
  std::optional<RequestId> request;
  std::optional<NodeIndex> node;
  std::optional<Seconds> value;
};

class EventLog {
public:
  void add(Event e) { events_.push_back(std::move(e)); }
  const std::vector<Event> &events() const { return events_; }
  /// One JSON object per line; node indices are written as node ids.
  std::string to_jsonl(const network::RoadNetwork &net) const;

private:
  std::vector<Event> events_;
};

struct World {
  std::shared_ptr<const network::RoadNetwork> network;
  Seconds clock = 0;
  std::vector<VehicleState> vehicles;
  std::vector<RequestRecord> requests;
  EventLog log;

  RequestRecord &record(RequestId id);
  const RequestRecord &record(RequestId id) const;

  /// Request ids that have arrived by now, are unassigned and still waiting.
  std::vector<RequestId> open_requests() const;

  /// Boards request `r` on vehicle `v` at the vehicle's node and time `clock`.
  void pick_up(VehicleState &v, RequestId r);

  /// Throws InternalError when a capacity, status or conservation invariant fails.
  void check_invariants() const;
};

World make_world(std::shared_ptr<const network::RoadNetwork> net, std::vector<planner::Request> requests,
                 const std::vector<NodeIndex> &positions, int capacity);

/// Advances the clock by one second: utility accrual for the elapsed second,
/// vehicle arrivals with their drop-offs and pick-ups, then expiry of
/// unassigned requests whose waiting bound has passed.
void step_world(World &world);

} // namespace tlfleet::sim
