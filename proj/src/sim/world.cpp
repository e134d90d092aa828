#include "tlfleet/sim/world.hpp"

#include <algorithm>
#include <json.hpp>

namespace tlfleet::sim {

std::string_view status_name(RequestStatus s) {
  switch (s) {
  case RequestStatus::Active:
    return "active";
  case RequestStatus::InProgress:
    return "in-progress";
  case RequestStatus::Completed:
    return "completed";
  case RequestStatus::Expired:
    return "expired";
  }
  return "?";
}

std::string_view status_name(VehicleStatus s) {
  switch (s) {
  case VehicleStatus::Vacant:
    return "vacant";
  case VehicleStatus::Available:
    return "available";
  case VehicleStatus::Occupied:
    return "occupied";
  case VehicleStatus::Rebalancing:
    return "rebalancing";
  }
  return "?";
}

std::optional<Seconds> RequestRecord::sigma() const {
  if (status != RequestStatus::Completed)
    return std::nullopt;
  return *t_drop - *t_asgmt;
}

int VehicleState::seats_onboard() const {
  int n = 0;
  for (const auto &o : onboard)
    n += o.seats;
  return n;
}

VehicleStatus VehicleState::status() const {
  if (available() == 0)
    return VehicleStatus::Occupied;
  if (available() < capacity)
    return VehicleStatus::Available;
  return rebalancing ? VehicleStatus::Rebalancing : VehicleStatus::Vacant;
}

std::string EventLog::to_jsonl(const network::RoadNetwork &net) const {
  std::string out;
  for (const auto &e : events_) {
    nlohmann::json j = {{"t", e.t}, {"event", e.kind}};
    if (e.vehicle)
      j["vehicle"] = *e.vehicle;
    if (e.request)
      j["request"] = *e.request;
    if (e.node)
      j["node"] = net.id(*e.node);
    if (e.value)
      j["value"] = *e.value;
    out += j.dump();
    out += '\n';
  }
  return out;
}

RequestRecord &World::record(RequestId id) {
  TLFLEET_ASSERT(id < requests.size(), "unknown request id");
  return requests[id];
}

const RequestRecord &World::record(RequestId id) const {
  TLFLEET_ASSERT(id < requests.size(), "unknown request id");
  return requests[id];
}

std::vector<RequestId> World::open_requests() const {
  std::vector<RequestId> out;
  for (const auto &r : requests)
    if (r.status == RequestStatus::Active && !r.vehicle && r.request.t_req <= clock)
      out.push_back(r.request.id);
  return out;
}

namespace {

void drop_off(World &w, VehicleState &v, std::size_t slot) {
  auto &rec = w.record(v.onboard[slot].request);
  rec.status = RequestStatus::Completed;
  rec.t_drop = w.clock;
  w.log.add({w.clock, "drop", v.id, rec.request.id, v.node, rec.sigma()});
  v.onboard.erase(v.onboard.begin() + static_cast<std::ptrdiff_t>(slot));
}

void arrive(World &w, VehicleState &v, NodeIndex node) {
  v.node = node;
  const auto &labels = w.network->labels(node);
  for (std::size_t i = 0; i < v.onboard.size();) {
    const auto &dfa = *w.record(v.onboard[i].request).request.dfa;
    v.onboard[i].state = dfa.step(v.onboard[i].state, dfa.symbol(labels));
    if (dfa.accepting(v.onboard[i].state))
      drop_off(w, v, i);
    else
      ++i;
  }
  const auto waiting = v.committed;
  for (RequestId r : waiting)
    if (w.record(r).request.pickup_node == node)
      w.pick_up(v, r);
}

} // namespace

void World::pick_up(VehicleState &v, RequestId id) {
  auto &rec = record(id);
  auto it = std::find(v.committed.begin(), v.committed.end(), id);
  TLFLEET_ASSERT(it != v.committed.end(), "pick-up of a request the vehicle does not hold");
  TLFLEET_ASSERT(rec.request.pickup_node == v.node, "pick-up away from the pick-up node");
  TLFLEET_ASSERT(clock <= rec.request.pickup_deadline(), "pick-up after the waiting bound");
  TLFLEET_ASSERT(v.available() >= rec.request.seats, "pick-up beyond capacity");
  v.committed.erase(it);

  const auto &dfa = *rec.request.dfa;
  const auto q = dfa.step(dfa.initial(), dfa.symbol(network->labels(v.node)));
  rec.status = RequestStatus::InProgress;
  rec.t_pick = clock;
  v.onboard.push_back({id, q, rec.request.seats});
  log.add({clock, "pickup", v.id, id, v.node, rec.request.seats});
  if (dfa.accepting(q))
    drop_off(*this, v, v.onboard.size() - 1);
}

void World::check_invariants() const {
  for (const auto &v : vehicles) {
    TLFLEET_ASSERT(v.available() >= 0 && v.available() <= v.capacity, "capacity out of bounds");
    int reserved = v.seats_onboard();
    for (RequestId r : v.committed)
      reserved += record(r).request.seats;
    TLFLEET_ASSERT(reserved <= v.capacity, "more seats promised than the vehicle has");
    if (!v.moving())
      TLFLEET_ASSERT(v.onboard.empty() && v.committed.empty(), "vehicle stopped with work left");
  }
  for (const auto &r : requests) {
    if (r.status == RequestStatus::Completed) {
      TLFLEET_ASSERT(*r.t_pick - r.request.t_req <= r.request.omega_max, "waiting bound broken");
      TLFLEET_ASSERT(*r.t_drop - r.request.t_req - r.request.t_star <= r.request.delta_max,
                     "delay bound broken");
    }
    if (r.status == RequestStatus::Expired)
      TLFLEET_ASSERT(!r.t_pick, "expired request was picked up");
  }
}

World make_world(std::shared_ptr<const network::RoadNetwork> net, std::vector<planner::Request> requests,
                 const std::vector<NodeIndex> &positions, int capacity) {
  World w;
  w.network = std::move(net);
  for (std::size_t i = 0; i < requests.size(); ++i) {
    TLFLEET_ASSERT(requests[i].id == i, "request ids must be 0..n-1 in order");
    w.requests.push_back({std::move(requests[i]), RequestStatus::Active, {}, {}, {}, {}});
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    VehicleState v;
    v.id = static_cast<VehicleId>(i);
    v.node = positions[i];
    v.capacity = capacity;
    w.vehicles.push_back(std::move(v));
  }
  return w;
}

void step_world(World &w) {
  for (auto &v : w.vehicles)
    v.utility += v.seats_onboard();
  ++w.clock;

  for (auto &v : w.vehicles) {
    if (!v.moving())
      continue;
    TLFLEET_ASSERT(v.route.arrival_times[v.leg] >= w.clock, "vehicle missed a scheduled arrival");
    if (v.route.arrival_times[v.leg] != w.clock)
      continue;
    const NodeIndex next = v.route.nodes[v.leg++];
    arrive(w, v, next);
    if (!v.moving()) {
      v.route = {};
      v.leg = 0;
      v.rebalancing = false;
    }
  }

  for (auto &r : w.requests) {
    if (r.status == RequestStatus::Active && !r.vehicle && r.request.t_req <= w.clock &&
        w.clock > r.request.pickup_deadline()) {
      r.status = RequestStatus::Expired;
      w.log.add({w.clock, "expire", std::nullopt, r.request.id, std::nullopt, std::nullopt});
    }
  }
  w.check_invariants();
}

} // namespace tlfleet::sim
