#include "tlfleet/rebalance/rebalance.hpp"

#include "tlfleet/network/paths.hpp"

#include <algorithm>
#include <stdexcept>

namespace tlfleet::rebalance {

double potential_utility(const RoadNetwork &net, NodeIndex s, std::size_t idle_count) {
  if (s >= net.size())
    throw std::out_of_range("node index out of range");
  return net.arrival_prob(s) / (1.0 + static_cast<double>(idle_count)) * net.avg_request_utility(s);
}

namespace {

std::size_t idle_near(const RoadNetwork &net, NodeIndex s, const std::vector<std::size_t> &idle_at,
                      std::size_t proximity_hops) {
  if (proximity_hops == 0)
    return idle_at[s];
  std::size_t count = 0;
  const auto hops = network::hop_distances(net, s);
  for (NodeIndex n = 0; n < net.size(); ++n)
    if (hops[n] && *hops[n] <= proximity_hops)
      count += idle_at[n];
  return count;
}

} // namespace

std::vector<std::size_t> nearby_idle_counts(const RoadNetwork &net,
                                            const std::vector<std::size_t> &idle_at,
                                            std::size_t proximity_hops) {
  std::vector<std::size_t> out(net.size());
  for (NodeIndex s = 0; s < net.size(); ++s)
    out[s] = idle_near(net, s, idle_at, proximity_hops);
  return out;
}

RebalanceDecision find_rebalance_target(const RoadNetwork &net, VehicleId vehicle,
                                        NodeIndex position, const std::vector<std::size_t> &idle_at,
                                        const RebalanceParams &params) {
  if (idle_at.size() != net.size())
    throw std::invalid_argument("idle counts must cover every node");
  if (params.k_w == 0 || !(params.k_a > 1.0))
    throw std::invalid_argument("rebalancing needs k_w >= 1 and k_a > 1");

  auto potential = [&](NodeIndex s) {
    return potential_utility(net, s, idle_near(net, s, idle_at, params.proximity_hops));
  };

  RebalanceDecision d;
  d.vehicle = vehicle;
  d.target = position;
  d.potential = potential(position);
  for (const auto &ring : network::neighbor_rings(net, position, params.k_w)) {
    if (ring.empty())
      continue;
    NodeIndex best = ring.front();
    double best_p = potential(best);
    for (std::size_t i = 1; i < ring.size(); ++i) {
      const double p = potential(ring[i]);
      if (p > best_p) {
        best = ring[i];
        best_p = p;
      }
    }
    if (best_p > 0.0 && best_p >= params.k_a * d.potential) {
      d.target = best;
      d.potential = best_p;
    }
  }
  if (d.target == position)
    d.route = {position};
  else
    d.route = network::shortest_path(net, position, d.target).value();
  return d;
}

std::map<VehicleId, RebalanceDecision> run_rebalancing(const RoadNetwork &net,
                                                       std::vector<IdleVehicle> vacant,
                                                       const RebalanceParams &params,
                                                       std::vector<std::size_t> already_idle_at) {
  if (already_idle_at.empty())
    already_idle_at.assign(net.size(), 0);
  if (already_idle_at.size() != net.size())
    throw std::invalid_argument("idle counts must cover every node");
  std::sort(vacant.begin(), vacant.end(),
            [](const IdleVehicle &a, const IdleVehicle &b) { return a.id < b.id; });

  // Undecided vehicles count at their current node, decided ones at their target.
  std::vector<std::size_t> idle_at = std::move(already_idle_at);
  for (const auto &v : vacant)
    ++idle_at.at(v.node);

  std::map<VehicleId, RebalanceDecision> out;
  for (const auto &v : vacant) {
    --idle_at[v.node];
    auto d = find_rebalance_target(net, v.id, v.node, idle_at, params);
    ++idle_at[d.target];
    out.emplace(v.id, std::move(d));
  }
  return out;
}

} // namespace tlfleet::rebalance
