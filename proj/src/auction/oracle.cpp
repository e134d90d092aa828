#include "tlfleet/auction/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>

namespace tlfleet::auction {

namespace {

constexpr double kTolerance = 1e-9;

struct Search {
  std::vector<VehicleId> vehicles;
  std::vector<std::vector<std::pair<std::size_t, double>>> options; // (request slot, -sigma)
  std::vector<RequestId> requests;

  std::vector<int> current; // request slot per vehicle, -1 for none
  std::vector<bool> taken;
  std::vector<int> best;
  std::size_t best_count = 0;
  double best_utility = -std::numeric_limits<double>::infinity();

  // Key for the lexicographic tie-break; none sorts after every request.
  static std::vector<std::size_t> key(const std::vector<int> &v, std::size_t none) {
    std::vector<std::size_t> k;
    for (int x : v)
      k.push_back(x < 0 ? none : static_cast<std::size_t>(x));
    return k;
  }

  void consider(std::size_t count, double utility) {
    bool better = false;
    if (best.empty() || count > best_count)
      better = true;
    else if (count == best_count) {
      if (utility > best_utility + kTolerance)
        better = true;
      else if (std::abs(utility - best_utility) <= kTolerance)
        better = key(current, requests.size()) < key(best, requests.size());
    }
    if (better) {
      best = current;
      best_count = count;
      best_utility = utility;
    }
  }

  void recurse(std::size_t i, std::size_t count, double utility) {
    if (i == vehicles.size()) {
      consider(count, utility);
      return;
    }
    for (const auto &[slot, u] : options[i]) {
      if (taken[slot])
        continue;
      taken[slot] = true;
      current[i] = static_cast<int>(slot);
      recurse(i + 1, count + 1, utility + u);
      taken[slot] = false;
    }
    current[i] = -1;
    recurse(i + 1, count, utility);
  }
};

} // namespace

OracleResult optimal_assignment_oracle(const SigmaTable &sigma, const std::vector<RequestId> &requests,
                                       std::size_t cap) {
  std::set<RequestId> unique(requests.begin(), requests.end());
  if (sigma.size() > cap || unique.size() > cap)
    throw OracleCapError("oracle limited to " + std::to_string(cap) + " vehicles and requests");

  Search s;
  s.requests.assign(unique.begin(), unique.end());
  for (const auto &[v, row] : sigma) {
    s.vehicles.push_back(v);
    std::vector<std::pair<std::size_t, double>> opts;
    for (const auto &[r, sg] : row) {
      auto it = std::lower_bound(s.requests.begin(), s.requests.end(), r);
      if (it != s.requests.end() && *it == r)
        opts.emplace_back(static_cast<std::size_t>(it - s.requests.begin()), -sg);
    }
    s.options.push_back(std::move(opts));
  }
  s.current.assign(s.vehicles.size(), -1);
  s.taken.assign(s.requests.size(), false);
  s.recurse(0, 0, 0.0);

  OracleResult out;
  for (std::size_t i = 0; i < s.best.size(); ++i) {
    if (s.best[i] < 0)
      continue;
    out.assignment.emplace(s.requests[static_cast<std::size_t>(s.best[i])], s.vehicles[i]);
  }
  out.total_utility = s.best.empty() ? 0.0 : s.best_utility;
  return out;
}

} // namespace tlfleet::auction
