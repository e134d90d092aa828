#include "tlfleet/planner/request.hpp"

#include "tlfleet/planner/product.hpp"

namespace tlfleet::planner {

Seconds optimal_satisfaction_time(const network::RoadNetwork &net, const Request &r) {
  const Dfa &dfa = *r.dfa;
  const Dfa::State boarded = dfa.step(dfa.initial(), dfa.symbol(net.labels(r.pickup_node)));
  const auto product = build_product(net, r.pickup_node, {{&dfa, boarded}});
  const auto route = plan_route(product, 0);
  if (!route)
    throw InfeasibleRequestError("request " + std::to_string(r.id) +
                                 " cannot be satisfied from " + net.id(r.pickup_node));
  return route->duration();
}

Request make_request(const network::RoadNetwork &net, RequestId id, std::string pickup_prop,
                     scltl::Formula formula, Seconds t_req, int seats, Seconds omega_max,
                     Seconds delta_max) {
  const auto nodes = net.nodes_with_label(pickup_prop);
  if (nodes.size() != 1)
    throw PickupError("pick-up proposition '" + pickup_prop + "' labels " +
                      std::to_string(nodes.size()) + " nodes, expected exactly one");
  if (seats < 1)
    throw std::invalid_argument("a request needs at least one seat");
  Request r;
  r.id = id;
  r.pickup_prop = std::move(pickup_prop);
  r.pickup_node = nodes.front();
  r.dfa = std::make_shared<const scltl::Dfa>(scltl::translate_to_dfa(formula));
  r.formula = std::move(formula);
  r.t_req = t_req;
  r.seats = seats;
  r.omega_max = omega_max;
  r.delta_max = delta_max;
  r.t_star = optimal_satisfaction_time(net, r);
  return r;
}

} // namespace tlfleet::planner
