#pragma once

#include "tlfleet/network/road_network.hpp"
#include "tlfleet/scltl/patterns.hpp"

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace tlfleet::sim {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Toggles {
  bool weight_correction = true;
  bool rebalancing = true;
};

struct ScenarioConfig {
  std::shared_ptr<const network::RoadNetwork> network;
  /// How the network was obtained, echoed into reports.
  nlohmann::json network_source;

  Seconds horizon = 1000;
  std::size_t n_vehicles = 10;
  int capacity = 2;
  std::size_t n_requests = 100;
  int seats = 1;
  Seconds omega_max = 40;
  Seconds delta_max = 100;
  Seconds cycle_period = 10;
  double alpha = -0.1;
  std::optional<double> epsilon;
  std::size_t k_w = 3;
  double k_a = 1.5;
  std::size_t proximity_hops = 1;
  std::uint64_t seed = 1;
  std::vector<scltl::PatternKind> patterns{std::begin(scltl::all_patterns),
                                           std::end(scltl::all_patterns)};
  Toggles toggles;

  /// Throws ConfigError on out-of-range fields.
  void validate() const;
};

/// Config document fields (all optional except the network):
///   "map": path (relative to `base_dir`) or
///   "grid": {rows, cols, weight_min, weight_max, seed, probability, peak_mass, spread},
///   horizon, vehicles, capacity, requests, seats, omega_max, delta_max,
///   cycle_period, alpha, epsilon, k_w, k_a, proximity_hops, seed,
///   patterns: [names], toggles: {weight_correction, rebalancing}.
ScenarioConfig load_config(const nlohmann::json &doc, const std::filesystem::path &base_dir);
ScenarioConfig load_config_file(const std::filesystem::path &path);

/// Scenario fields without the network itself.
nlohmann::json to_json(const ScenarioConfig &config);

} // namespace tlfleet::sim
