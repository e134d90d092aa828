#pragma once

#include "tlfleet/auction/messages.hpp"

#include <map>
#include <optional>

namespace tlfleet::auction {

/// One vehicle's local view of request prices. Unknown requests cost 0 and
/// stored prices never decrease.
class PriceTable {
public:
  double price(RequestId r) const;
  /// Sets the price to max(current, value).
  void raise(RequestId r, double value);
  const std::map<RequestId, double> &known() const { return prices_; }

private:
  std::map<RequestId, double> prices_;
};

/// Best request for a bidder whose utility for request j is -sigma_j.
///
/// With net values eta_j = -sigma_j - p_j, the bidder picks j with the largest
/// eta (lowest id on ties) and bids B = p_j + eta_j - eta_k + epsilon against
/// the runner-up k. The runner-up is the best other request, or `outside` (the
/// value of staying unassigned) if that is larger. With neither available the
/// bid is p_j + epsilon. Returns nullopt when there is no request or when
/// eta_j < outside.
std::optional<Bid> compute_bid(VehicleId vehicle, const std::map<RequestId, double> &sigma,
                               const PriceTable &prices, double epsilon,
                               std::optional<double> outside = std::nullopt, unsigned round = 0);

/// alpha * (U_v - U_avg): the bid adjustment inside one bidding group.
double weight_correction(double utility, double group_average, double alpha);

} // namespace tlfleet::auction
