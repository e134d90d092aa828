#pragma once

#include "tlfleet/sim/config.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tlfleet::cli {

/// Bad command-line input; reported with exit code 2 like config errors.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// "a..b" (inclusive), "a,b,c" or a single seed.
std::vector<std::uint64_t> parse_seeds(const std::string &text);

/// "all" or a comma-separated subset of "off", "wc", "rb", "wc+rb".
std::vector<sim::Toggles> parse_toggles(const std::string &text);
std::string toggle_name(const sim::Toggles &t);

nlohmann::json cmd_simulate(const std::filesystem::path &config, std::optional<std::uint64_t> seed,
                            const std::filesystem::path &out,
                            const std::optional<std::filesystem::path> &events = std::nullopt);

/// Runs every seed under every toggle setting. A failing cell is recorded and
/// the batch continues.
nlohmann::json cmd_batch(const std::filesystem::path &config, const std::vector<std::uint64_t> &seeds,
                         const std::vector<sim::Toggles> &toggles, const std::filesystem::path &out,
                         const std::optional<std::filesystem::path> &csv = std::nullopt);

struct MapOptions {
  std::string kind = "uniform";
  std::size_t size = 4;
  Seconds weight_min = 1;
  Seconds weight_max = 1;
  std::uint64_t seed = 1;
  double peak_mass = 0.5;
  std::size_t spread = 1;
};

nlohmann::json cmd_gen_map(const MapOptions &options, const std::filesystem::path &out);

/// Auction (alpha = 0) against the exact oracle: per-cycle utility gap on
/// identical offer tables, and end-to-end metrics of both methods.
nlohmann::json cmd_oracle_compare(const std::filesystem::path &config,
                                  const std::vector<std::uint64_t> &seeds,
                                  const std::filesystem::path &out);
nlohmann::json oracle_compare(const sim::ScenarioConfig &config,
                              const std::vector<std::uint64_t> &seeds);

/// Whole command line; returns the process exit code (0 ok, 1 internal, 2 usage or config).
int run_cli(int argc, char **argv, std::ostream &out, std::ostream &err);

} // namespace tlfleet::cli
