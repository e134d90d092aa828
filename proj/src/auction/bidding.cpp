#include "tlfleet/auction/bidding.hpp"

#include <algorithm>
#include <stdexcept>

namespace tlfleet::auction {

double PriceTable::price(RequestId r) const {
  auto it = prices_.find(r);
  return it == prices_.end() ? 0.0 : it->second;
}

void PriceTable::raise(RequestId r, double value) {
  auto [it, fresh] = prices_.emplace(r, value);
  if (!fresh)
    it->second = std::max(it->second, value);
}

std::optional<Bid> compute_bid(VehicleId vehicle, const std::map<RequestId, double> &sigma,
                               const PriceTable &prices, double epsilon,
                               std::optional<double> outside, unsigned round) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("epsilon must be positive");
  std::optional<RequestId> best;
  double best_net = 0.0;
  std::optional<double> second_net;
  for (const auto &[r, s] : sigma) {
    const double net = -s - prices.price(r);
    if (!best || net > best_net) {
      if (best)
        second_net = second_net ? std::max(*second_net, best_net) : best_net;
      best = r;
      best_net = net;
    } else {
      second_net = second_net ? std::max(*second_net, net) : net;
    }
  }
  if (!best)
    return std::nullopt;
  if (outside) {
    if (best_net < *outside)
      return std::nullopt;
    second_net = second_net ? std::max(*second_net, *outside) : *outside;
  }
  const double p = prices.price(*best);
  const double value = second_net ? p + best_net - *second_net + epsilon : p + epsilon;
  return Bid{vehicle, *best, value, round};
}

double weight_correction(double utility, double group_average, double alpha) {
  return alpha * (utility - group_average);
}

} // namespace tlfleet::auction
