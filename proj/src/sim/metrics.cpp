#include "tlfleet/sim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tlfleet::sim {

MetricsReport compute_metrics(const std::vector<double> &utilities,
                              const std::vector<RequestRecord> &requests) {
  MetricsReport m;
  m.utilities = utilities;
  if (!utilities.empty()) {
    const auto [lo, hi] = std::minmax_element(utilities.begin(), utilities.end());
    m.min_utility = *lo;
    m.max_utility = *hi;
    const double n = static_cast<double>(utilities.size());
    m.average_utility = std::accumulate(utilities.begin(), utilities.end(), 0.0) / n;
    double sq = 0.0;
    for (double u : utilities)
      sq += (u - m.average_utility) * (u - m.average_utility);
    m.deviation = std::sqrt(sq / n);
  }
  m.total_requests = requests.size();
  for (const auto &r : requests) {
    switch (r.status) {
    case RequestStatus::Completed:
      ++m.served;
      m.total_travel_time += *r.sigma();
      break;
    case RequestStatus::Expired:
      ++m.expired;
      break;
    case RequestStatus::InProgress:
      ++m.in_progress;
      break;
    case RequestStatus::Active:
      ++m.pending;
      break;
    }
  }
  m.serving_rate = m.total_requests == 0
                       ? 1.0
                       : static_cast<double>(m.served) / static_cast<double>(m.total_requests);
  return m;
}

MetricsReport compute_metrics(const World &world) {
  std::vector<double> u;
  for (const auto &v : world.vehicles)
    u.push_back(static_cast<double>(v.utility));
  return compute_metrics(u, world.requests);
}

nlohmann::json to_json(const MetricsReport &m) {
  return {
      {"utilities", m.utilities},
      {"min_utility", m.min_utility},
      {"max_utility", m.max_utility},
      {"utility_deviation", m.deviation},
      {"average_utility", m.average_utility},
      {"total_travel_time", m.total_travel_time},
      {"total_requests", m.total_requests},
      {"served", m.served},
      {"expired", m.expired},
      {"in_progress", m.in_progress},
      {"pending", m.pending},
      {"serving_rate", m.serving_rate},
  };
}

} // namespace tlfleet::sim
