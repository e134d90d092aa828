#pragma once

#include "tlfleet/planner/request.hpp"
#include "tlfleet/sim/config.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace tlfleet::sim {

/// Exactly `n` arrival times in [0, horizon): sorted uniform samples floored
/// to whole seconds, i.e. a Poisson process conditioned on its count.
std::vector<Seconds> arrival_times(std::size_t n, Seconds horizon, std::mt19937_64 &rng);

/// Unconditioned homogeneous Poisson process with `rate` arrivals per second
/// over [0, horizon).
std::vector<Seconds> poisson_arrivals(double rate, Seconds horizon, std::mt19937_64 &rng);

/// A label that holds at `node` and nowhere else, if any.
std::optional<std::string> unique_label(const network::RoadNetwork &net, NodeIndex node);

/// Random satisfiable request of the given pattern picked up at `pickup`.
/// Destination nodes are drawn uniformly among the other nodes. For patterns
/// with a conjunction, the conjuncts are two labels of one destination node.
/// Returns nullopt when the sample has no satisfying route.
std::optional<planner::Request> sample_request(const network::RoadNetwork &net, RequestId id,
                                               NodeIndex pickup, scltl::PatternKind kind,
                                               Seconds t_req, int seats, Seconds omega_max,
                                               Seconds delta_max, std::mt19937_64 &rng);

/// Request stream for a scenario: arrival times, pick-up nodes drawn from the
/// arrival probabilities, patterns drawn uniformly. Infeasible samples are
/// redrawn up to 100 times. Deterministic in config.seed.
std::vector<planner::Request> generate_requests(const ScenarioConfig &config);

/// Estimates U_avg(s) for nodes that have none: the mean optimal satisfaction
/// time of a few sampled requests from s, or the network-wide mean when none
/// of them is satisfiable.
network::RoadNetwork fill_avg_request_utilities(const network::RoadNetwork &net,
                                                const std::vector<scltl::PatternKind> &patterns,
                                                std::uint64_t seed, std::size_t samples = 3);

} // namespace tlfleet::sim
