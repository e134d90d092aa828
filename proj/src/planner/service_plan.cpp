#include "tlfleet/planner/service_plan.hpp"

#include <algorithm>

namespace tlfleet::planner {

namespace {

struct Tracked {
  const Request *request;
  Dfa::State state;
  bool picked_up;
  std::optional<Seconds> t_pick;
};

} // namespace

std::optional<ServicePlan> evaluate_service_plan(const RoadNetwork &net,
                                                 const PlanningOrigin &origin, const Request &r,
                                                 Seconds now,
                                                 const network::DistanceTable *distances) {
  if (origin.free_seats <= 0 || origin.free_seats < r.seats)
    return std::nullopt;
  if (origin.time > r.pickup_deadline())
    return std::nullopt;
  const auto reach = distances ? distances->at(origin.node, r.pickup_node)
                               : network::shortest_travel_time(net, origin.node, r.pickup_node);
  if (!reach || origin.time + *reach > r.pickup_deadline())
    return std::nullopt;

  std::vector<Tracked> tracked;
  for (const auto &c : origin.commitments)
    tracked.push_back({c.request, c.state, c.picked_up, std::nullopt});
  tracked.push_back({&r, r.dfa->initial(), false, std::nullopt});

  Seconds latest = 0;
  const auto &origin_labels = net.labels(origin.node);
  for (auto &t : tracked) {
    if (!t.picked_up && t.request->pickup_node == origin.node) {
      t.state = t.request->dfa->step(t.state, t.request->dfa->symbol(origin_labels));
      t.picked_up = true;
      t.t_pick = origin.time;
    }
    latest = std::max(latest, t.request->drop_deadline());
  }
  if (latest < origin.time)
    return std::nullopt;

  std::vector<TrackedAutomaton> automata;
  for (const auto &t : tracked)
    automata.push_back({t.request->dfa.get(), t.state});
  const auto product = build_product(net, origin.node, std::move(automata));
  auto route = plan_route(product, origin.time, latest - origin.time);
  if (!route)
    return std::nullopt;

  ServicePlan plan;
  plan.request_id = r.id;
  plan.t_asgmt = now;
  for (auto &t : tracked) {
    const Dfa &dfa = *t.request->dfa;
    Dfa::State q = t.state;
    std::optional<Seconds> drop;
    if (dfa.accepting(q))
      drop = origin.time;
    for (std::size_t i = 1; i < route->nodes.size() && !drop; ++i) {
      const NodeIndex n = route->nodes[i];
      if (!t.picked_up) {
        if (n != t.request->pickup_node)
          continue;
        t.picked_up = true;
        t.t_pick = route->arrival_times[i];
      }
      q = dfa.step(q, dfa.symbol(net.labels(n)));
      if (dfa.accepting(q))
        drop = route->arrival_times[i];
    }
    TLFLEET_ASSERT(drop.has_value(), "planned route does not satisfy a tracked request");
    if (t.t_pick && *t.t_pick > t.request->pickup_deadline())
      return std::nullopt;
    if (*drop > t.request->drop_deadline())
      return std::nullopt;
    plan.schedule.push_back({t.request->id, t.t_pick.value_or(-1), *drop});
  }

  const PlannedVisit &own = plan.schedule.back();
  plan.t_pick = own.t_pick;
  plan.t_drop = own.t_drop;
  plan.sigma = plan.t_drop - plan.t_asgmt;
  plan.delay = plan.t_drop - r.t_req - r.t_star;
  plan.route = std::move(*route);
  return plan;
}

} // namespace tlfleet::planner
