#include "tlfleet/auction/auction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace tlfleet::auction {

Agent::Agent(VehicleId id, double utility_history, std::map<RequestId, Offer> offers)
    : id_(id), utility_(utility_history), offers_(std::move(offers)) {}

void Agent::announce(MessageBus &bus, std::span<const VehicleId> fleet, unsigned round,
                     double epsilon, double outside_value) {
  round_ = round;
  epsilon_ = epsilon;
  challenger_ = false;
  preferred_.reset();
  group_.clear();
  if (holding_) {
    preferred_ = holding_;
    bid_ = standing_bid_;
  } else {
    std::map<RequestId, double> sigma;
    for (const auto &[r, offer] : offers_)
      sigma.emplace(r, offer.sigma);
    if (auto b = compute_bid(id_, sigma, prices_, epsilon, outside_value, round)) {
      preferred_ = b->request;
      bid_ = b->value;
      challenger_ = true;
    }
  }
  bus.broadcast(AuctionMessage::preferred(id_, round, preferred_), fleet);
}

void Agent::collect_announcements(MessageBus &bus, std::span<const VehicleId> fleet) {
  for (VehicleId other : fleet) {
    if (other == id_)
      continue;
    const auto r = bus.recv(id_, other).preferred_request();
    if (preferred_ && r == preferred_)
      group_.push_back(other);
  }
  if (preferred_)
    group_.push_back(id_);
  std::sort(group_.begin(), group_.end());
}

void Agent::share_history(MessageBus &bus) {
  if (group_.size() > 1)
    bus.broadcast(AuctionMessage::history(id_, round_, utility_), group_);
}

void Agent::apply_correction(MessageBus &bus, double alpha) {
  if (group_.size() <= 1)
    return;
  double sum = utility_;
  for (VehicleId other : group_)
    if (other != id_)
      sum += bus.recv(id_, other).utility();
  const double average = sum / static_cast<double>(group_.size());
  // A corrected bid still has to lift the price by epsilon.
  if (challenger_)
    bid_ = std::max(bid_ + weight_correction(utility_, average, alpha),
                    prices_.price(*preferred_) + epsilon_);
}

void Agent::share_bid(MessageBus &bus) {
  if (!preferred_)
    return;
  const Bid mine{id_, *preferred_, bid_, round_};
  if (challenger_)
    bid_log_.push_back(mine);
  if (group_.size() > 1)
    bus.broadcast(AuctionMessage::bid(id_, mine), group_);
}

void Agent::settle(MessageBus &bus) {
  if (!preferred_)
    return;
  VehicleId winner = id_;
  double best = bid_;
  for (VehicleId other : group_) {
    if (other == id_)
      continue;
    const Bid b = bus.recv(id_, other).bid_payload();
    if (b.request != *preferred_)
      throw ProtocolError("bid for a different request inside a bidding group");
    if (b.value > best || (b.value == best && other < winner)) {
      best = b.value;
      winner = other;
    }
  }
  if (winner == id_) {
    holding_ = preferred_;
    standing_bid_ = bid_;
  } else if (holding_ == preferred_) {
    holding_.reset();
  }
  prices_.raise(*preferred_, best);
}

AssignmentOutcome run_auction(std::vector<Agent> &agents, std::span<const RequestId> requests,
                              const AuctionParams &params) {
  AssignmentOutcome outcome;
  std::set<RequestId> all(requests.begin(), requests.end());
  for (const auto &a : agents)
    for (const auto &[r, offer] : a.offers())
      all.insert(r);

  std::vector<VehicleId> fleet;
  for (const auto &a : agents)
    fleet.push_back(a.id());
  std::sort(fleet.begin(), fleet.end());
  if (std::adjacent_find(fleet.begin(), fleet.end()) != fleet.end())
    throw std::invalid_argument("duplicate vehicle id in auction");

  const double epsilon =
      params.epsilon.value_or(agents.empty() ? 1.0 : 1.0 / static_cast<double>(agents.size()));
  double lo = 0.0, hi = 0.0;
  bool seen = false;
  for (const auto &a : agents)
    for (const auto &[r, offer] : a.offers()) {
      lo = seen ? std::min(lo, offer.sigma) : offer.sigma;
      hi = seen ? std::max(hi, offer.sigma) : offer.sigma;
      seen = true;
    }
  // Below this, any assignment serving one more request is worth more than
  // any assignment serving fewer, whatever the sigmas.
  const double outside =
      params.outside_value.value_or(-(static_cast<double>(all.size()) + 1.0) * (std::max(hi, 0.0) + 1.0));
  // Prices stop rising once the net value of every request drops below the
  // outside value. A contested round lifts some price by epsilon unless every
  // challenger bid from stale prices, which costs at most one extra round.
  const double span = std::max(0.0, -outside - lo) + std::abs(params.alpha) * (hi - lo + 1.0) + 1.0;
  const double bound = 4.0 * (static_cast<double>(all.size()) + 1.0) * (span / epsilon + 2.0) + 100.0;
  const unsigned max_rounds = params.max_rounds.value_or(static_cast<unsigned>(
      std::clamp(bound, 50.0 * static_cast<double>(all.size()), 5e7)));

  // Reference scheduler: phases run for every agent in vehicle-id order, or in
  // a seeded random order per phase when shuffling.
  std::vector<std::size_t> order(agents.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return agents[a].id() < agents[b].id(); });
  std::mt19937_64 rng(params.shuffle_seed.value_or(0));
  auto for_each_agent = [&](auto &&step) {
    if (params.shuffle_seed)
      std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order)
      step(agents[i]);
  };

  MessageBus bus(fleet);
  unsigned round = 0;
  for (; round < max_rounds; ++round) {
    for_each_agent([&](Agent &a) { a.announce(bus, fleet, round, epsilon, outside); });
    for_each_agent([&](Agent &a) { a.collect_announcements(bus, fleet); });
    const bool any_bid =
        std::any_of(agents.begin(), agents.end(), [](const Agent &a) { return a.bid_this_round(); });
    if (!any_bid)
      break;
    for_each_agent([&](Agent &a) { a.share_history(bus); });
    for_each_agent([&](Agent &a) { a.apply_correction(bus, params.alpha); });
    for_each_agent([&](Agent &a) { a.share_bid(bus); });
    for_each_agent([&](Agent &a) { a.settle(bus); });
    TLFLEET_ASSERT(bus.pending() == 0, "undelivered auction messages at end of round");
  }
  outcome.rounds = round;
  outcome.round_limit_reached = round >= max_rounds;

  for (const auto &a : agents) {
    if (!a.holding())
      continue;
    const RequestId r = *a.holding();
    TLFLEET_ASSERT(!outcome.assignment.contains(r), "request held by two vehicles");
    outcome.assignment.emplace(r, a.id());
    const auto &offer = a.offers().at(r);
    if (offer.plan)
      outcome.plans.emplace(r, *offer.plan);
  }
  for (RequestId r : all)
    if (!outcome.assignment.contains(r))
      outcome.unassigned.push_back(r);
  outcome.trace_jsonl = bus.trace_jsonl();
  return outcome;
}

} // namespace tlfleet::auction
