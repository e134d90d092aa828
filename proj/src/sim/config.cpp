#include "tlfleet/sim/config.hpp"

#include "tlfleet/network/generators.hpp"
#include "tlfleet/network/io.hpp"

#include <fstream>

namespace tlfleet::sim {

using nlohmann::json;

void ScenarioConfig::validate() const {
  if (!network)
    throw ConfigError("scenario has no road network");
  if (network->size() == 0)
    throw ConfigError("road network has no nodes");
  if (horizon <= 0)
    throw ConfigError("horizon must be positive");
  if (cycle_period <= 0)
    throw ConfigError("cycle_period must be positive");
  if (omega_max <= 0 || delta_max <= 0)
    throw ConfigError("omega_max and delta_max must be positive");
  if (capacity < 1)
    throw ConfigError("capacity must be at least 1");
  if (seats < 1 || seats > capacity)
    throw ConfigError("seats must be between 1 and capacity");
  if (epsilon && !(*epsilon > 0.0))
    throw ConfigError("epsilon must be positive");
  if (k_w < 1)
    throw ConfigError("k_w must be at least 1");
  if (!(k_a > 1.0))
    throw ConfigError("k_a must be greater than 1");
  if (patterns.empty())
    throw ConfigError("at least one pattern is required");
}

namespace {

template <typename T> T field(const json &doc, const char *key, T fallback) {
  if (!doc.contains(key) || doc.at(key).is_null())
    return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception &e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

template <typename T> T nonnegative(const json &doc, const char *key, T fallback) {
  const auto v = field<long long>(doc, key, static_cast<long long>(fallback));
  if (v < 0)
    throw ConfigError(std::string("config field '") + key + "' must not be negative");
  return static_cast<T>(v);
}

std::shared_ptr<const network::RoadNetwork> grid_network(const json &g) {
  network::GridSpec spec;
  spec.rows = nonnegative<std::size_t>(g, "rows", 5);
  spec.cols = nonnegative<std::size_t>(g, "cols", spec.rows);
  spec.weight_min = field<Seconds>(g, "weight_min", 1);
  spec.weight_max = field<Seconds>(g, "weight_max", spec.weight_min);
  spec.seed = field<std::uint64_t>(g, "seed", 1);
  const auto kind = field<std::string>(g, "probability", "uniform");
  try {
    auto net = network::make_grid(spec);
    const auto probs =
        network::make_probability_map(net, network::probability_kind_from_name(kind),
                                      field<double>(g, "peak_mass", 0.5),
                                      nonnegative<std::size_t>(g, "spread", 1));
    return std::make_shared<const network::RoadNetwork>(net.with_arrival_probs(probs));
  } catch (const ConfigError &) {
    throw;
  } catch (const std::exception &e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

} // namespace

ScenarioConfig load_config(const json &doc, const std::filesystem::path &base_dir) {
  if (!doc.is_object())
    throw ConfigError("config must be a JSON object");
  ScenarioConfig c;
  if (doc.contains("map")) {
    const auto path = base_dir / field<std::string>(doc, "map", "");
    try {
      c.network = std::make_shared<const network::RoadNetwork>(network::load_network_file(path));
    } catch (const network::NetworkError &e) {
      throw ConfigError(e.what());
    }
    c.network_source = {{"map", path.lexically_normal().string()}};
  } else if (doc.contains("grid")) {
    c.network = grid_network(doc.at("grid"));
    c.network_source = {{"grid", doc.at("grid")}};
  } else {
    throw ConfigError("config needs either 'map' or 'grid'");
  }

  c.horizon = field<Seconds>(doc, "horizon", c.horizon);
  c.n_vehicles = nonnegative<std::size_t>(doc, "vehicles", c.n_vehicles);
  c.capacity = field<int>(doc, "capacity", c.capacity);
  c.n_requests = nonnegative<std::size_t>(doc, "requests", c.n_requests);
  c.seats = field<int>(doc, "seats", c.seats);
  c.omega_max = field<Seconds>(doc, "omega_max", c.omega_max);
  c.delta_max = field<Seconds>(doc, "delta_max", c.delta_max);
  c.cycle_period = field<Seconds>(doc, "cycle_period", c.cycle_period);
  c.alpha = field<double>(doc, "alpha", c.alpha);
  if (doc.contains("epsilon") && !doc.at("epsilon").is_null())
    c.epsilon = field<double>(doc, "epsilon", 0.0);
  c.k_w = nonnegative<std::size_t>(doc, "k_w", c.k_w);
  c.k_a = field<double>(doc, "k_a", c.k_a);
  c.proximity_hops = nonnegative<std::size_t>(doc, "proximity_hops", c.proximity_hops);
  c.seed = field<std::uint64_t>(doc, "seed", c.seed);
  if (doc.contains("patterns")) {
    c.patterns.clear();
    for (const auto &name : field<std::vector<std::string>>(doc, "patterns", {})) {
      try {
        c.patterns.push_back(scltl::pattern_from_name(name));
      } catch (const std::exception &e) {
        throw ConfigError(e.what());
      }
    }
  }
  if (doc.contains("toggles")) {
    const auto &t = doc.at("toggles");
    c.toggles.weight_correction = field<bool>(t, "weight_correction", true);
    c.toggles.rebalancing = field<bool>(t, "rebalancing", true);
  }
  c.validate();
  return c;
}

ScenarioConfig load_config_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("config not found: " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception &e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return load_config(doc, path.parent_path());
}

json to_json(const ScenarioConfig &c) {
  json patterns = json::array();
  for (auto p : c.patterns)
    patterns.push_back(std::string(scltl::pattern_name(p)));
  json doc = {
      {"network", c.network_source},
      {"horizon", c.horizon},
      {"vehicles", c.n_vehicles},
      {"capacity", c.capacity},
      {"requests", c.n_requests},
      {"seats", c.seats},
      {"omega_max", c.omega_max},
      {"delta_max", c.delta_max},
      {"cycle_period", c.cycle_period},
      {"alpha", c.alpha},
      {"epsilon", c.epsilon ? json(*c.epsilon) : json(nullptr)},
      {"k_w", c.k_w},
      {"k_a", c.k_a},
      {"proximity_hops", c.proximity_hops},
      {"seed", c.seed},
      {"patterns", patterns},
      {"toggles",
       {{"weight_correction", c.toggles.weight_correction}, {"rebalancing", c.toggles.rebalancing}}},
  };
  return doc;
}

} // namespace tlfleet::sim
