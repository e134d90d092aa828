#pragma once

#include "tlfleet/auction/bidding.hpp"
#include "tlfleet/auction/messages.hpp"
#include "tlfleet/planner/service_plan.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace tlfleet::auction {

/// A request this vehicle can serve, with the travel duration it would take.
struct Offer {
  double sigma = 0.0;
  std::optional<planner::ServicePlan> plan;
};

struct AuctionParams {
  double alpha = 0.0;
  /// Bid slack; 1/N for N bidders when unset.
  std::optional<double> epsilon;
  /// Round cap; sized from the price range the bids can cover when unset,
  /// and never below 50 * |requests|.
  std::optional<unsigned> max_rounds;
  /// Value of ending the auction without a request, shared by every bidder.
  /// Unset means -(|requests| + 1) * (largest offered sigma + 1), low enough
  /// that serving more requests always beats serving them more cheaply.
  std::optional<double> outside_value;
  /// Deliver messages in a random (per-sender FIFO) interleaving.
  std::optional<std::uint64_t> shuffle_seed;
};

/// One bidding vehicle. Its state is private; everything it learns about
/// other vehicles arrives through the MessageBus.
class Agent {
public:
  Agent(VehicleId id, double utility_history, std::map<RequestId, Offer> offers);

  VehicleId id() const { return id_; }
  const std::map<RequestId, Offer> &offers() const { return offers_; }
  std::optional<RequestId> holding() const { return holding_; }
  const PriceTable &prices() const { return prices_; }
  /// Every bid this agent sent, corrected values included.
  const std::vector<Bid> &bid_log() const { return bid_log_; }
  bool bid_this_round() const { return challenger_; }

  // Phase I: choose a request and announce it to the fleet.
  void announce(MessageBus &bus, std::span<const VehicleId> fleet, unsigned round,
                double epsilon, double outside_value);
  void collect_announcements(MessageBus &bus, std::span<const VehicleId> fleet);
  // Phase II: utility histories inside the bidding group.
  void share_history(MessageBus &bus);
  void apply_correction(MessageBus &bus, double alpha);
  // Phase III: bids inside the bidding group; every member picks the same winner.
  void share_bid(MessageBus &bus);
  void settle(MessageBus &bus);

private:
  VehicleId id_;
  double utility_;
  std::map<RequestId, Offer> offers_;
  PriceTable prices_;
  std::optional<RequestId> holding_;
  double standing_bid_ = 0.0;

  unsigned round_ = 0;
  std::optional<RequestId> preferred_;
  bool challenger_ = false;
  double bid_ = 0.0;
  double epsilon_ = 0.0;
  std::vector<VehicleId> group_;
  std::vector<Bid> bid_log_;
};

struct AssignmentOutcome {
  std::map<RequestId, VehicleId> assignment;
  std::map<RequestId, planner::ServicePlan> plans;
  std::vector<RequestId> unassigned;
  unsigned rounds = 0;
  bool round_limit_reached = false;
  std::string trace_jsonl;
};

/// Fair auction. Each round every agent announces a request (holders repeat
/// the one they hold), agents announcing the same request form a bidding
/// group, the group shares utility histories so challengers can add
/// weight_correction to their bids, then the group shares bids and the
/// largest bid (lowest vehicle id on ties) holds the request. Stops after a
/// round with no new bid, or at the round cap.
AssignmentOutcome run_auction(std::vector<Agent> &agents, std::span<const RequestId> requests,
                              const AuctionParams &params);

} // namespace tlfleet::auction
