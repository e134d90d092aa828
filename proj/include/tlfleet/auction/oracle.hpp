#pragma once

#include "tlfleet/types.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace tlfleet::auction {

class OracleCapError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// sigma[v][r] for every request r that vehicle v can serve.
using SigmaTable = std::map<VehicleId, std::map<RequestId, double>>;

struct OracleResult {
  std::map<RequestId, VehicleId> assignment;
  double total_utility = 0.0;
};

/// Exhaustive search over partial matchings of at most 8 vehicles and 8
/// requests. Prefers more assigned requests, then larger total utility
/// sum(-sigma), then the lexicographically smallest vehicle-to-request vector
/// (vehicles in id order, "unassigned" ordered after every request).
OracleResult optimal_assignment_oracle(const SigmaTable &sigma, const std::vector<RequestId> &requests,
                                       std::size_t cap = 8);

} // namespace tlfleet::auction
