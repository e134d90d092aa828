#include "tlfleet/cli/commands.hpp"

#include "tlfleet/auction/oracle.hpp"
#include "tlfleet/network/generators.hpp"
#include "tlfleet/network/io.hpp"
#include "tlfleet/sim/simulation.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace tlfleet::cli {

using nlohmann::json;

namespace {

void write_text(const std::filesystem::path &path, const std::string &text) {
  std::ofstream f(path);
  if (!f)
    throw UsageError("cannot write " + path.string());
  f << text;
}

void write_json(const std::filesystem::path &path, const json &doc) {
  write_text(path, doc.dump(2) + "\n");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::uint64_t parse_seed(const std::string &s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception &) {
    throw UsageError("bad seed '" + s + "'");
  }
  if (used != s.size() || s.empty() || s[0] == '-')
    throw UsageError("bad seed '" + s + "'");
  return v;
}

} // namespace

std::vector<std::uint64_t> parse_seeds(const std::string &text) {
  std::vector<std::uint64_t> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto a = parse_seed(text.substr(0, dots));
    const auto b = parse_seed(text.substr(dots + 2));
    if (b < a)
      throw UsageError("empty seed range '" + text + "'");
    for (auto s = a; s <= b; ++s)
      out.push_back(s);
    return out;
  }
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');)
    out.push_back(parse_seed(part));
  if (out.empty())
    throw UsageError("no seeds given");
  return out;
}

std::string toggle_name(const sim::Toggles &t) {
  if (t.weight_correction && t.rebalancing)
    return "wc+rb";
  if (t.weight_correction)
    return "wc";
  if (t.rebalancing)
    return "rb";
  return "off";
}

std::vector<sim::Toggles> parse_toggles(const std::string &text) {
  const std::vector<sim::Toggles> all{{false, false}, {true, false}, {false, true}, {true, true}};
  if (text == "all")
    return all;
  std::vector<sim::Toggles> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    const auto it = std::find_if(all.begin(), all.end(),
                                 [&](const sim::Toggles &t) { return toggle_name(t) == part; });
    if (it == all.end())
      throw UsageError("unknown toggle setting '" + part + "' (expected off, wc, rb, wc+rb or all)");
    out.push_back(*it);
  }
  if (out.empty())
    throw UsageError("no toggle settings given");
  return out;
}

json cmd_simulate(const std::filesystem::path &config_path, std::optional<std::uint64_t> seed,
                  const std::filesystem::path &out,
                  const std::optional<std::filesystem::path> &events) {
  auto config = sim::load_config_file(config_path);
  if (seed)
    config.seed = *seed;
  const auto start = std::chrono::steady_clock::now();
  const auto result = sim::run_simulation(config);
  json report = {
      {"scenario", sim::to_json(config)},
      {"metrics", sim::to_json(result.metrics)},
      {"wall_clock_seconds", seconds_since(start)},
  };
  write_json(out, report);
  if (events)
    write_text(*events, result.world.log.to_jsonl(*result.world.network));
  return report;
}

namespace {

const char *const kAggregateFields[] = {"min_utility", "utility_deviation", "average_utility",
                                        "serving_rate"};

} // namespace

json cmd_batch(const std::filesystem::path &config_path, const std::vector<std::uint64_t> &seeds,
               const std::vector<sim::Toggles> &toggles, const std::filesystem::path &out,
               const std::optional<std::filesystem::path> &csv) {
  if (seeds.empty())
    throw UsageError("batch needs at least one seed");
  const auto base = sim::load_config_file(config_path);
  const auto start = std::chrono::steady_clock::now();

  json cells = json::array();
  std::ostringstream table;
  table << "row,toggles,seed,min_utility,utility_deviation,average_utility,serving_rate,served,"
           "expired,total_travel_time\n";
  for (const auto &t : toggles) {
    json rows = json::array();
    json failed = json::array();
    std::map<std::string, double> sums;
    for (auto seed : seeds) {
      auto config = base;
      config.seed = seed;
      config.toggles = t;
      try {
        const auto m = sim::to_json(sim::run_simulation(config).metrics);
        rows.push_back({{"seed", seed}, {"metrics", m}});
        for (const char *f : kAggregateFields)
          sums[f] += m.at(f).get<double>();
        table << "seed," << toggle_name(t) << ',' << seed << ',' << m["min_utility"] << ','
              << m["utility_deviation"] << ',' << m["average_utility"] << ','
              << m["serving_rate"] << ',' << m["served"] << ',' << m["expired"] << ','
              << m["total_travel_time"] << '\n';
      } catch (const std::exception &e) {
        failed.push_back({{"seed", seed}, {"error", e.what()}});
      }
    }
    json aggregate = json::object();
    if (!rows.empty()) {
      for (const char *f : kAggregateFields)
        aggregate[std::string("mean_") + f] = sums[f] / static_cast<double>(rows.size());
      table << "mean," << toggle_name(t) << ",," << aggregate["mean_min_utility"] << ','
            << aggregate["mean_utility_deviation"] << ',' << aggregate["mean_average_utility"]
            << ',' << aggregate["mean_serving_rate"] << ",,,\n";
    }
    cells.push_back({{"toggles",
                      {{"name", toggle_name(t)},
                       {"weight_correction", t.weight_correction},
                       {"rebalancing", t.rebalancing}}},
                     {"rows", rows},
                     {"failed", failed},
                     {"aggregate", aggregate}});
  }
  json report = {
      {"scenario", sim::to_json(base)},
      {"seeds", seeds},
      {"cells", cells},
      {"wall_clock_seconds", seconds_since(start)},
  };
  write_json(out, report);
  if (csv)
    write_text(*csv, table.str());
  return report;
}

json cmd_gen_map(const MapOptions &o, const std::filesystem::path &out) {
  if (o.size < 2)
    throw UsageError("map size must be at least 2");
  if (o.weight_min < 1 || o.weight_max < o.weight_min)
    throw UsageError("weights must satisfy 1 <= weight_min <= weight_max");
  network::ProbabilityKind kind;
  try {
    kind = network::probability_kind_from_name(o.kind);
  } catch (const std::exception &e) {
    throw UsageError(e.what());
  }
  auto net = network::make_grid({o.size, o.size, o.weight_min, o.weight_max, o.seed});
  net = net.with_arrival_probs(network::make_probability_map(net, kind, o.peak_mass, o.spread));
  const auto doc = network::to_json(net);
  write_json(out, doc);
  return doc;
}

json oracle_compare(const sim::ScenarioConfig &base, const std::vector<std::uint64_t> &seeds) {
  json per_seed = json::array();
  double sum_rate_auction = 0, sum_rate_oracle = 0, sum_avg_auction = 0, sum_avg_oracle = 0;
  double max_gap = 0.0;
  std::size_t cycles = 0, bound_violations = 0;
  for (auto seed : seeds) {
    auto config = base;
    config.seed = seed;
    config.alpha = 0.0;
    config.toggles.weight_correction = false;

    sim::SimulationOptions auction_run;
    auction_run.assigner = sim::auction_assigner();
    auction_run.record_cycles = true;
    const auto distributed = sim::run_simulation(config, auction_run);
    json gaps = json::array();
    for (const auto &c : distributed.cycles) {
      std::vector<RequestId> requests;
      for (const auto &[v, row] : c.sigma)
        for (const auto &[r, s] : row)
          requests.push_back(r);
      std::sort(requests.begin(), requests.end());
      requests.erase(std::unique(requests.begin(), requests.end()), requests.end());
      const auto best = auction::optimal_assignment_oracle(c.sigma, requests);
      const double got = sim::assignment_utility(c.sigma, c.assignment);
      const double gap = best.total_utility - got;
      const bool same_count = best.assignment.size() == c.assignment.size();
      const bool within = same_count && gap <= static_cast<double>(requests.size()) * c.epsilon + 1e-9;
      bound_violations += within ? 0 : 1;
      max_gap = std::max(max_gap, gap);
      ++cycles;
      gaps.push_back({{"t", c.time},
                      {"requests", requests.size()},
                      {"auction_utility", got},
                      {"oracle_utility", best.total_utility},
                      {"auction_assigned", c.assignment.size()},
                      {"oracle_assigned", best.assignment.size()},
                      {"gap", gap}});
    }
    sim::SimulationOptions oracle_run;
    oracle_run.assigner = sim::oracle_assigner();
    const auto central = sim::run_simulation(config, oracle_run);
    const auto &a = distributed.metrics;
    const auto &o = central.metrics;
    sum_rate_auction += a.serving_rate;
    sum_rate_oracle += o.serving_rate;
    sum_avg_auction += a.average_utility;
    sum_avg_oracle += o.average_utility;
    per_seed.push_back({{"seed", seed},
                        {"auction", sim::to_json(a)},
                        {"oracle", sim::to_json(o)},
                        {"cycles", gaps}});
  }
  const double n = static_cast<double>(seeds.size());
  const double avg_a = sum_avg_auction / n, avg_o = sum_avg_oracle / n;
  json summary = {
      {"mean_serving_rate_auction", sum_rate_auction / n},
      {"mean_serving_rate_oracle", sum_rate_oracle / n},
      {"serving_rate_difference", (sum_rate_auction - sum_rate_oracle) / n},
      {"mean_average_utility_auction", avg_a},
      {"mean_average_utility_oracle", avg_o},
      {"average_utility_relative_difference", avg_o == 0.0 ? 0.0 : (avg_a - avg_o) / avg_o},
      {"cycles", cycles},
      {"max_cycle_gap", max_gap},
      {"cycle_bound_violations", bound_violations},
  };
  return {{"scenario", sim::to_json(base)}, {"summary", summary}, {"seeds", per_seed}};
}

json cmd_oracle_compare(const std::filesystem::path &config_path,
                        const std::vector<std::uint64_t> &seeds, const std::filesystem::path &out) {
  if (seeds.empty())
    throw UsageError("oracle-compare needs at least one seed");
  const auto start = std::chrono::steady_clock::now();
  auto report = oracle_compare(sim::load_config_file(config_path), seeds);
  report["wall_clock_seconds"] = seconds_since(start);
  write_json(out, report);
  return report;
}

int run_cli(int argc, char **argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Fair temporal-logic fleet dispatch simulator"};
  app.require_subcommand(1);

  std::string config, out_path, seeds_text, toggles_text = "all";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> events, csv;
  MapOptions map;

  auto *simulate = app.add_subcommand("simulate", "Run one scenario");
  simulate->add_option("--config", config, "Scenario config (JSON)")->required();
  simulate->add_option("--seed", seed, "Override the config seed");
  simulate->add_option("--out", out_path, "Report file")->required();
  simulate->add_option("--events", events, "Write the event log (JSON lines)");

  auto *batch = app.add_subcommand("batch", "Run seeds x toggle settings");
  batch->add_option("--config", config, "Scenario config (JSON)")->required();
  batch->add_option("--seeds", seeds_text, "Seeds: a..b or a,b,c")->required();
  batch->add_option("--toggles", toggles_text, "all or a list of off,wc,rb,wc+rb");
  batch->add_option("--out", out_path, "Report file")->required();
  batch->add_option("--csv", csv, "Also write a comma-separated table");

  auto *gen = app.add_subcommand("gen-map", "Write a grid map");
  gen->add_option("--kind", map.kind, "uniform, center, corner or two_peaks")->required();
  gen->add_option("--size", map.size, "Grid side length")->required();
  gen->add_option("--out", out_path, "Map file")->required();
  gen->add_option("--weight-min", map.weight_min, "Smallest edge weight");
  gen->add_option("--weight-max", map.weight_max, "Largest edge weight");
  gen->add_option("--map-seed", map.seed, "Edge weight seed");
  gen->add_option("--peak-mass", map.peak_mass, "Probability mass per peak");
  gen->add_option("--spread", map.spread, "Peak radius in hops");

  auto *compare = app.add_subcommand("oracle-compare", "Auction against the exact oracle");
  compare->add_option("--config", config, "Scenario config (JSON)")->required();
  compare->add_option("--seeds", seeds_text, "Seeds: a..b or a,b,c")->required();
  compare->add_option("--out", out_path, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) {
      const auto r = cmd_simulate(config, seed, out_path,
                                  events ? std::optional<std::filesystem::path>(*events) : std::nullopt);
      out << "serving_rate " << r["metrics"]["serving_rate"] << "\n";
    } else if (batch->parsed()) {
      const auto r = cmd_batch(config, parse_seeds(seeds_text), parse_toggles(toggles_text), out_path,
                               csv ? std::optional<std::filesystem::path>(*csv) : std::nullopt);
      for (const auto &cell : r["cells"])
        out << cell["toggles"]["name"].get<std::string>() << ' ' << cell["aggregate"].dump() << "\n";
    } else if (gen->parsed()) {
      const auto doc = cmd_gen_map(map, out_path);
      out << "nodes " << doc["nodes"].size() << "\n";
    } else if (compare->parsed()) {
      const auto r = cmd_oracle_compare(config, parse_seeds(seeds_text), out_path);
      out << r["summary"].dump() << "\n";
    }
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const sim::ConfigError &e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const network::NetworkError &e) {
    err << "map error: " << e.what() << "\n";
    return 2;
  } catch (const auction::OracleCapError &e) {
    err << "oracle cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

} // namespace tlfleet::cli
