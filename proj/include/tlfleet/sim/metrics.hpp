#pragma once

#include "tlfleet/sim/world.hpp"

#include <json.hpp>
#include <vector>

namespace tlfleet::sim {

struct MetricsReport {
  std::vector<double> utilities;
  double min_utility = 0.0;
  double max_utility = 0.0;
  /// Population standard deviation of the utilities.
  double deviation = 0.0;
  double average_utility = 0.0;
  /// J: sum of t_drop - t_asgmt over completed requests.
  Seconds total_travel_time = 0;
  std::size_t total_requests = 0;
  std::size_t served = 0;
  std::size_t expired = 0;
  std::size_t in_progress = 0;
  /// Still waiting at the end, assigned or not.
  std::size_t pending = 0;
  /// served / total_requests, 1 when there were no requests.
  double serving_rate = 1.0;
};

MetricsReport compute_metrics(const std::vector<double> &utilities,
                              const std::vector<RequestRecord> &requests);
MetricsReport compute_metrics(const World &world);

nlohmann::json to_json(const MetricsReport &m);

} // namespace tlfleet::sim
