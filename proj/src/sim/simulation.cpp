#include "tlfleet/sim/simulation.hpp"

#include "tlfleet/network/paths.hpp"
#include "tlfleet/planner/service_plan.hpp"
#include "tlfleet/rebalance/rebalance.hpp"
#include "tlfleet/sim/requests.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace tlfleet::sim {

Assigner auction_assigner(std::optional<std::uint64_t> shuffle_seed) {
  return [shuffle_seed](const std::vector<Bidder> &bidders, const std::vector<RequestId> &requests,
                        const AssignContext &ctx) {
    std::vector<auction::Agent> agents;
    for (const auto &b : bidders)
      agents.emplace_back(b.vehicle, b.utility, b.offers);
    auction::AuctionParams params;
    params.alpha = ctx.alpha;
    params.epsilon = ctx.epsilon;
    if (shuffle_seed)
      params.shuffle_seed = *shuffle_seed ^ static_cast<std::uint64_t>(ctx.time);
    return auction::run_auction(agents, requests, params).assignment;
  };
}

Assigner oracle_assigner(std::size_t cap) {
  return [cap](const std::vector<Bidder> &bidders, const std::vector<RequestId> &requests,
               const AssignContext &) {
    auction::SigmaTable sigma;
    for (const auto &b : bidders)
      for (const auto &[r, offer] : b.offers)
        sigma[b.vehicle][r] = offer.sigma;
    return auction::optimal_assignment_oracle(sigma, requests, cap).assignment;
  };
}

double assignment_utility(const auction::SigmaTable &sigma,
                          const std::map<RequestId, VehicleId> &assignment) {
  double total = 0.0;
  for (const auto &[r, v] : assignment)
    total -= sigma.at(v).at(r);
  return total;
}

std::vector<NodeIndex> initial_positions(const ScenarioConfig &config) {
  std::mt19937_64 rng(config.seed ^ 0xc2b2ae3d27d4eb4fULL);
  std::uniform_int_distribution<NodeIndex> pick(0, static_cast<NodeIndex>(config.network->size() - 1));
  std::vector<NodeIndex> out(config.n_vehicles);
  for (auto &n : out)
    n = pick(rng);
  return out;
}

namespace {

class Engine {
public:
  Engine(const ScenarioConfig &config, const SimulationOptions &options)
      : config_(config), assigner_(options.assigner ? options.assigner : auction_assigner()),
        record_cycles_(options.record_cycles) {
    auto net = config.network;
    bool missing = false;
    for (NodeIndex s = 0; s < net->size(); ++s)
      missing = missing || !net->has_avg_request_utility(s);
    if (missing)
      net = std::make_shared<const network::RoadNetwork>(
          fill_avg_request_utilities(*net, config.patterns, 0));
    distances_.emplace(*net);
    world_ = make_world(net, options.requests ? *options.requests : generate_requests(config),
                        options.positions ? *options.positions : initial_positions(config),
                        config.capacity);
  }

  SimulationResult run() {
    std::size_t next_request = 0;
    for (Seconds t = 0; t < config_.horizon; ++t) {
      for (; next_request < world_.requests.size() &&
             world_.requests[next_request].request.t_req == t;
           ++next_request) {
        const auto &r = world_.requests[next_request].request;
        world_.log.add({t, "request", std::nullopt, r.id, r.pickup_node, r.t_star});
      }
      if (t % config_.cycle_period == 0)
        dispatch();
      step_world(world_);
    }
    SimulationResult out;
    out.metrics = compute_metrics(world_);
    out.cycles = std::move(cycles_);
    out.world = std::move(world_);
    return out;
  }

private:
  const network::RoadNetwork &net() const { return *world_.network; }

  planner::PlanningOrigin origin_of(const VehicleState &v) const {
    planner::PlanningOrigin o;
    o.node = v.moving() ? v.route.nodes[v.leg] : v.node;
    o.time = v.moving() ? v.route.arrival_times[v.leg] : world_.clock;
    int reserved = v.seats_onboard();
    const auto &labels = net().labels(o.node);
    for (const auto &ob : v.onboard) {
      const auto &req = world_.record(ob.request).request;
      auto q = ob.state;
      if (v.moving())
        q = req.dfa->step(q, req.dfa->symbol(labels));
      o.commitments.push_back({&req, q, true});
    }
    for (RequestId r : v.committed) {
      const auto &req = world_.record(r).request;
      reserved += req.seats;
      o.commitments.push_back({&req, req.dfa->initial(), false});
    }
    o.free_seats = v.capacity - reserved;
    return o;
  }

  void dispatch() {
    const Seconds now = world_.clock;
    const auto open = world_.open_requests();
    if (!open.empty())
      assign(now, open);
    if (config_.toggles.rebalancing)
      rebalance(now);
  }

  void assign(Seconds now, const std::vector<RequestId> &open) {
    std::vector<Bidder> bidders;
    std::set<RequestId> offered;
    for (const auto &v : world_.vehicles) {
      const auto origin = origin_of(v);
      if (origin.free_seats <= 0)
        continue;
      Bidder b{v.id, static_cast<double>(v.utility), {}};
      for (RequestId r : open) {
        auto plan = planner::evaluate_service_plan(net(), origin, world_.record(r).request, now,
                                                   &*distances_);
        if (!plan)
          continue;
        const auto sigma = static_cast<double>(plan->sigma);
        b.offers.emplace(r, auction::Offer{sigma, std::move(plan)});
        offered.insert(r);
      }
      if (!b.offers.empty())
        bidders.push_back(std::move(b));
    }
    if (bidders.empty())
      return;

    const std::vector<RequestId> requests(offered.begin(), offered.end());
    const AssignContext ctx{now, config_.toggles.weight_correction ? config_.alpha : 0.0,
                            config_.epsilon};
    const auto assignment = assigner_(bidders, requests, ctx);

    if (record_cycles_) {
      CycleRecord rec;
      rec.time = now;
      for (const auto &b : bidders)
        for (const auto &[r, offer] : b.offers)
          rec.sigma[b.vehicle][r] = offer.sigma;
      rec.assignment = assignment;
      rec.epsilon = config_.epsilon.value_or(1.0 / static_cast<double>(bidders.size()));
      cycles_.push_back(std::move(rec));
    }

    for (const auto &[r, vid] : assignment) {
      const auto b = std::find_if(bidders.begin(), bidders.end(),
                                  [vid = vid](const Bidder &x) { return x.vehicle == vid; });
      TLFLEET_ASSERT(b != bidders.end() && b->offers.contains(r), "assignment without an offer");
      commit(world_.vehicles.at(vid), r, *b->offers.at(r).plan, now);
    }
  }

  void commit(VehicleState &v, RequestId r, const planner::ServicePlan &plan, Seconds now) {
    auto &rec = world_.record(r);
    TLFLEET_ASSERT(!rec.vehicle, "request assigned twice");
    rec.vehicle = v.id;
    rec.t_asgmt = now;
    v.committed.push_back(r);
    v.rebalancing = false;
    world_.log.add({now, "assign", v.id, r, std::nullopt, plan.sigma});

    if (v.moving()) {
      // Finish the current edge, then follow the plan.
      planner::Route route;
      route.start_time = v.route.arrival_times[v.leg - 1];
      route.nodes = {v.route.nodes[v.leg - 1]};
      route.arrival_times = {route.start_time};
      for (std::size_t i = 0; i < plan.route.nodes.size(); ++i) {
        route.nodes.push_back(plan.route.nodes[i]);
        route.arrival_times.push_back(plan.route.arrival_times[i]);
      }
      v.route = std::move(route);
      v.leg = 1;
      return;
    }

    v.route = plan.route;
    v.leg = 1;
    if (rec.request.pickup_node == v.node)
      world_.pick_up(v, r);
    if (!v.moving()) {
      v.route = {};
      v.leg = 0;
    }
  }

  void rebalance(Seconds now) {
    std::vector<rebalance::IdleVehicle> idle;
    std::vector<std::size_t> elsewhere(net().size(), 0);
    for (const auto &v : world_.vehicles) {
      if (!v.onboard.empty() || !v.committed.empty())
        continue;
      if (v.moving()) {
        if (v.rebalancing)
          ++elsewhere[v.route.nodes.back()];
        continue;
      }
      idle.push_back({v.id, v.node});
    }
    if (idle.empty())
      return;
    rebalance::RebalanceParams params{config_.k_w, config_.k_a, config_.proximity_hops};
    for (auto &[vid, d] : rebalance::run_rebalancing(net(), idle, params, elsewhere)) {
      if (!d.moves())
        continue;
      auto &v = world_.vehicles.at(vid);
      v.route = planner::make_route(net(), d.route, now);
      v.leg = 1;
      v.rebalancing = true;
      world_.log.add({now, "rebalance", vid, std::nullopt, d.target, std::nullopt});
    }
  }

  const ScenarioConfig &config_;
  Assigner assigner_;
  bool record_cycles_;
  std::optional<network::DistanceTable> distances_;
  World world_;
  std::vector<CycleRecord> cycles_;
};

} // namespace

SimulationResult run_simulation(const ScenarioConfig &config, const SimulationOptions &options) {
  config.validate();
  return Engine(config, options).run();
}

} // namespace tlfleet::sim
