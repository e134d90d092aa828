#pragma once

#include "tlfleet/network/road_network.hpp"
#include "tlfleet/scltl/dfa.hpp"
#include "tlfleet/scltl/formula.hpp"

#include <memory>
#include <stdexcept>
#include <string>

namespace tlfleet::planner {

/// No route satisfies the request from its pick-up node.
class InfeasibleRequestError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The pick-up proposition does not label exactly one node.
class PickupError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Transportation request (pick-up, formula, arrival time, seats, waiting and delay bounds)
/// together with its compiled automaton and optimal satisfaction time t*.
struct Request {
  RequestId id = 0;
  std::string pickup_prop;
  NodeIndex pickup_node = 0;
  scltl::Formula formula = scltl::Formula::bottom();
  std::shared_ptr<const scltl::Dfa> dfa;
  Seconds t_req = 0;
  int seats = 1;
  Seconds omega_max = 0;
  Seconds delta_max = 0;
  Seconds t_star = 0;

  Seconds pickup_deadline() const { return t_req + omega_max; }
  Seconds drop_deadline() const { return t_req + t_star + delta_max; }
};

/// Minimal travel time from the pick-up node until the formula is satisfied,
/// with the pick-up node's label consumed on boarding.
Seconds optimal_satisfaction_time(const network::RoadNetwork &net, const Request &r);

/// Resolves the pick-up node, compiles the formula and fills in t*.
Request make_request(const network::RoadNetwork &net, RequestId id, std::string pickup_prop,
                     scltl::Formula formula, Seconds t_req, int seats, Seconds omega_max,
                     Seconds delta_max);

} // namespace tlfleet::planner
