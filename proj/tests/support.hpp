#pragma once

// Independent brute-force oracles and random instance generators shared by
// the unit tests and the acceptance suite.

#include "tlfleet/network/road_network.hpp"
#include "tlfleet/planner/product.hpp"
#include "tlfleet/scltl/dfa.hpp"
#include "tlfleet/scltl/formula.hpp"
#include "tlfleet/scltl/semantics.hpp"

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace testsupport {

using namespace tlfleet;

/// Every subset of `props`, in bitmask order.
inline std::vector<scltl::PropositionSet> all_letters(const std::vector<std::string> &props) {
  std::vector<scltl::PropositionSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << props.size()); ++mask) {
    scltl::PropositionSet s;
    for (std::size_t i = 0; i < props.size(); ++i)
      if (mask & (std::size_t{1} << i))
        s.insert(props[i]);
    out.push_back(std::move(s));
  }
  return out;
}

/// Calls `visit` on every word of length 0..max_len over 2^props.
inline void for_each_word(const std::vector<std::string> &props, std::size_t max_len,
                          const std::function<void(const scltl::FiniteWord &)> &visit) {
  const auto letters = all_letters(props);
  scltl::FiniteWord w;
  std::function<void()> rec = [&] {
    visit(w);
    if (w.size() == max_len)
      return;
    for (const auto &l : letters) {
      w.push_back(l);
      rec();
      w.pop_back();
    }
  };
  rec();
}

/// Number of words on which the automaton and the semantics disagree.
inline std::size_t language_mismatches(const scltl::Formula &phi, std::size_t max_len) {
  const auto dfa = scltl::translate_to_dfa(phi);
  const auto props = phi.propositions();
  std::size_t bad = 0;
  for_each_word({props.begin(), props.end()}, max_len, [&](const scltl::FiniteWord &w) {
    if (dfa.accepts(w) != scltl::evaluate_finite(phi, w))
      ++bad;
  });
  return bad;
}

/// Random formula of the base grammar with exactly `ops` operators over `props`.
inline scltl::Formula random_formula(std::mt19937_64 &rng, std::size_t ops,
                                     const std::vector<std::string> &props) {
  std::uniform_int_distribution<std::size_t> prop(0, props.size() - 1);
  if (ops == 0)
    return scltl::Formula::atom(props[prop(rng)]);
  std::uniform_int_distribution<int> kind(0, 5);
  switch (kind(rng)) {
  case 0:
    return scltl::Formula::negated_atom(props[prop(rng)]);
  case 1:
    return scltl::Formula::next(random_formula(rng, ops - 1, props));
  case 2:
    return scltl::Formula::eventually(random_formula(rng, ops - 1, props));
  default: {
    std::uniform_int_distribution<std::size_t> split(0, ops - 1);
    const auto left = split(rng);
    auto a = random_formula(rng, left, props);
    auto b = random_formula(rng, ops - 1 - left, props);
    const int k = kind(rng) % 3;
    if (k == 0)
      return scltl::Formula::conj(a, b);
    if (k == 1)
      return scltl::Formula::disj(a, b);
    return scltl::Formula::until(a, b);
  }
  }
}

/// Random directed graph with `n` nodes. Node i carries the unique label
/// `s<i>` and a random subset of {a, b, c}.
inline network::RoadNetwork random_graph(std::mt19937_64 &rng, std::size_t n, double edge_prob,
                                         tlfleet::Seconds max_weight) {
  std::vector<std::string> alphabet{"a", "b", "c"};
  std::vector<network::NodeSpec> nodes;
  std::bernoulli_distribution coin(0.35);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = "s" + std::to_string(i);
    alphabet.push_back(id);
    std::vector<std::string> labels{id};
    for (const char *p : {"a", "b", "c"})
      if (coin(rng))
        labels.push_back(p);
    nodes.push_back({id, labels, std::nullopt, std::nullopt});
  }
  std::bernoulli_distribution edge(edge_prob);
  std::uniform_int_distribution<tlfleet::Seconds> weight(1, max_weight);
  std::vector<network::EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && edge(rng))
        edges.push_back({"s" + std::to_string(i), "s" + std::to_string(j), weight(rng)});
  return network::RoadNetwork(alphabet, nodes, edges);
}

/// Minimum total weight of a walk from `start` (automata already in `states`)
/// after which every automaton accepts. Depth-first enumeration of walks,
/// pruned only when the same (node, states) was already reached at a lower
/// cost. nullopt when no walk within `budget` satisfies all automata.
inline std::optional<tlfleet::Seconds>
brute_force_min_cost(const network::RoadNetwork &net, tlfleet::NodeIndex start,
                     const std::vector<const scltl::Dfa *> &dfas,
                     std::vector<scltl::Dfa::State> states, tlfleet::Seconds budget) {
  std::optional<tlfleet::Seconds> best;
  std::map<std::pair<tlfleet::NodeIndex, std::vector<scltl::Dfa::State>>, tlfleet::Seconds> seen;
  auto all_accept = [&](const std::vector<scltl::Dfa::State> &q) {
    for (std::size_t i = 0; i < dfas.size(); ++i)
      if (!dfas[i]->accepting(q[i]))
        return false;
    return true;
  };
  std::function<void(tlfleet::NodeIndex, std::vector<scltl::Dfa::State> &, tlfleet::Seconds)> walk =
      [&](tlfleet::NodeIndex node, std::vector<scltl::Dfa::State> &q, tlfleet::Seconds cost) {
        if (cost > budget || (best && cost >= *best))
          return;
        auto key = std::make_pair(node, q);
        auto it = seen.find(key);
        if (it != seen.end() && it->second <= cost)
          return;
        seen[key] = cost;
        if (all_accept(q)) {
          best = cost;
          return;
        }
        for (const auto &e : net.out_edges(node)) {
          std::vector<scltl::Dfa::State> next = q;
          for (std::size_t i = 0; i < dfas.size(); ++i) {
            scltl::PropositionSet letter(net.labels(e.to).begin(), net.labels(e.to).end());
            next[i] = dfas[i]->step(next[i], letter);
          }
          walk(e.to, next, cost + e.weight);
        }
      };
  walk(start, states, 0);
  return best;
}

/// Whether the route is a walk in `net` whose labels drive every automaton to acceptance.
inline bool route_satisfies(const network::RoadNetwork &net, const planner::Route &route,
                            const std::vector<const scltl::Dfa *> &dfas,
                            std::vector<scltl::Dfa::State> states) {
  for (std::size_t k = 1; k < route.nodes.size(); ++k) {
    const auto w = net.edge_weight(route.nodes[k - 1], route.nodes[k]);
    if (!w || route.arrival_times[k] != route.arrival_times[k - 1] + *w)
      return false;
    scltl::PropositionSet letter(net.labels(route.nodes[k]).begin(), net.labels(route.nodes[k]).end());
    for (std::size_t i = 0; i < dfas.size(); ++i)
      states[i] = dfas[i]->step(states[i], letter);
  }
  for (std::size_t i = 0; i < dfas.size(); ++i)
    if (!dfas[i]->accepting(states[i]))
      return false;
  return true;
}

/// Best total utility (sum of -sigma) over one-to-one partial assignments,
/// maximising the number of assigned requests first. Enumerates every
/// injective map from requests to vehicles-or-none.
inline std::pair<std::size_t, double>
permutation_optimum(const std::map<tlfleet::VehicleId, std::map<tlfleet::RequestId, double>> &sigma,
                    const std::vector<tlfleet::RequestId> &requests) {
  std::vector<tlfleet::VehicleId> vehicles;
  for (const auto &[v, row] : sigma)
    vehicles.push_back(v);
  std::pair<std::size_t, double> best{0, 0.0};
  std::vector<bool> used(vehicles.size(), false);
  std::function<void(std::size_t, std::size_t, double)> rec = [&](std::size_t k, std::size_t count,
                                                                 double total) {
    if (k == requests.size()) {
      if (count > best.first || (count == best.first && total > best.second))
        best = {count, total};
      return;
    }
    rec(k + 1, count, total);
    for (std::size_t i = 0; i < vehicles.size(); ++i) {
      if (used[i])
        continue;
      const auto &row = sigma.at(vehicles[i]);
      auto it = row.find(requests[k]);
      if (it == row.end())
        continue;
      used[i] = true;
      rec(k + 1, count + 1, total - it->second);
      used[i] = false;
    }
  };
  rec(0, 0, 0.0);
  return best;
}

} // namespace testsupport

#include "tlfleet/sim/simulation.hpp"

namespace testsupport {

/// Replays the event log and the final records of a run and returns a
/// description of the first broken invariant, or an empty string.
inline std::string simulation_violation(const sim::SimulationResult &res, const sim::ScenarioConfig &config) {
  const auto &w = res.world;
  const std::size_t nr = w.requests.size();
  enum class St { Waiting, Riding, Done, Gone };
  std::vector<St> st(nr, St::Waiting);
  std::vector<Seconds> picked(nr, -1);
  std::vector<int> seats(w.vehicles.size(), 0);
  std::vector<Seconds> ledger(w.vehicles.size(), 0);
  std::vector<std::optional<VehicleId>> rider(nr);
  Seconds last_t = 0;
  for (const auto &e : w.log.events()) {
    if (e.t < last_t)
      return "event log out of time order";
    last_t = e.t;
    if (e.kind == "pickup") {
      if (st[*e.request] != St::Waiting)
        return "pickup of a request that is not waiting";
      st[*e.request] = St::Riding;
      picked[*e.request] = e.t;
      rider[*e.request] = *e.vehicle;
      seats[*e.vehicle] += static_cast<int>(*e.value);
      if (seats[*e.vehicle] > config.capacity)
        return "vehicle over capacity";
    } else if (e.kind == "drop") {
      if (st[*e.request] != St::Riding || rider[*e.request] != *e.vehicle)
        return "drop of a request that is not riding this vehicle";
      st[*e.request] = St::Done;
      const int s = w.requests[*e.request].request.seats;
      seats[*e.vehicle] -= s;
      if (seats[*e.vehicle] < 0)
        return "negative seat count";
      ledger[*e.vehicle] += s * (e.t - picked[*e.request]);
    } else if (e.kind == "expire") {
      if (st[*e.request] != St::Waiting)
        return "expiry of a request that is not waiting";
      st[*e.request] = St::Gone;
    }
  }
  for (std::size_t r = 0; r < nr; ++r)
    if (st[r] == St::Riding)
      ledger[*rider[r]] += w.requests[r].request.seats * (w.clock - picked[r]);

  std::size_t served = 0, expired = 0, riding = 0, waiting = 0;
  for (std::size_t r = 0; r < nr; ++r) {
    const auto &rec = w.requests[r];
    switch (st[r]) {
    case St::Waiting:
      ++waiting;
      if (rec.status != sim::RequestStatus::Active)
        return "record status disagrees with the log";
      break;
    case St::Riding:
      ++riding;
      if (rec.status != sim::RequestStatus::InProgress)
        return "record status disagrees with the log";
      break;
    case St::Done:
      ++served;
      if (rec.status != sim::RequestStatus::Completed)
        return "record status disagrees with the log";
      if (*rec.t_pick - rec.request.t_req > rec.request.omega_max)
        return "waiting bound broken";
      if (*rec.t_drop - rec.request.t_req - rec.request.t_star > rec.request.delta_max)
        return "delay bound broken";
      if (*rec.t_asgmt > *rec.t_pick || *rec.t_pick > *rec.t_drop)
        return "assignment, pick-up and drop-off out of order";
      break;
    case St::Gone:
      ++expired;
      if (rec.status != sim::RequestStatus::Expired)
        return "record status disagrees with the log";
      break;
    }
  }
  const auto &m = res.metrics;
  if (served + expired + riding + waiting != nr || m.served != served || m.expired != expired ||
      m.in_progress != riding || m.pending != waiting || m.total_requests != nr)
    return "request conservation broken";
  for (std::size_t v = 0; v < w.vehicles.size(); ++v) {
    if (w.vehicles[v].utility != ledger[v])
      return "utility differs from the event-log ledger for vehicle " + std::to_string(v);
    if (w.vehicles[v].seats_onboard() != seats[v])
      return "final seat count differs from the log";
  }
  if (m.min_utility > m.average_utility + 1e-9 || m.average_utility > m.max_utility + 1e-9)
    return "utility aggregates out of order";
  return {};
}

} // namespace testsupport
