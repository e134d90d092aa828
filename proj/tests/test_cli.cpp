#include "tlfleet/cli/commands.hpp"
#include "tlfleet/network/io.hpp"

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tlfleet_cli_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int &counter() {
    static int n = 0;
    return n;
  }
};

int run(const std::string &args) {
  const std::string cmd = std::string(TLFLEET_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json read_json(const fs::path &p) {
  std::ifstream in(p);
  return json::parse(in);
}

void write_json(const fs::path &p, const json &doc) { std::ofstream(p) << doc.dump(2); }

json small_scenario() {
  return {{"grid", {{"rows", 3}, {"cols", 3}, {"probability", "center"}}},
          {"horizon", 120},
          {"vehicles", 3},
          {"requests", 10},
          {"seed", 3}};
}

} // namespace

TEST_CASE("seed and toggle parsing") {
  REQUIRE(tlfleet::cli::parse_seeds("3..5") == std::vector<std::uint64_t>{3, 4, 5});
  REQUIRE(tlfleet::cli::parse_seeds("7") == std::vector<std::uint64_t>{7});
  REQUIRE(tlfleet::cli::parse_seeds("1,9") == std::vector<std::uint64_t>{1, 9});
  REQUIRE_THROWS_AS(tlfleet::cli::parse_seeds("5..3"), tlfleet::cli::UsageError);
  REQUIRE_THROWS_AS(tlfleet::cli::parse_seeds("x"), tlfleet::cli::UsageError);
  REQUIRE(tlfleet::cli::parse_toggles("all").size() == 4);
  REQUIRE(tlfleet::cli::parse_toggles("off,wc+rb").size() == 2);
  REQUIRE_THROWS_AS(tlfleet::cli::parse_toggles("maybe"), tlfleet::cli::UsageError);
}

TEST_CASE("simulate writes a report and honours the seed override") {
  TempDir dir;
  write_json(dir.path / "c.json", small_scenario());
  REQUIRE(run("simulate --config " + (dir.path / "c.json").string() + " --seed 7 --out " +
              (dir.path / "r.json").string() + " --events " + (dir.path / "e.jsonl").string()) == 0);
  const auto r = read_json(dir.path / "r.json");
  REQUIRE(r["metrics"].contains("serving_rate"));
  REQUIRE(r["scenario"]["seed"] == 7);
  REQUIRE(fs::file_size(dir.path / "e.jsonl") > 0);

  // Same input, same report apart from wall-clock time.
  REQUIRE(run("simulate --config " + (dir.path / "c.json").string() + " --seed 7 --out " +
              (dir.path / "r2.json").string()) == 0);
  auto r2 = read_json(dir.path / "r2.json");
  REQUIRE(r2["metrics"] == r["metrics"]);
}

TEST_CASE("configuration and usage errors exit with 2") {
  TempDir dir;
  auto doc = small_scenario();
  doc.erase("grid");
  doc["map"] = "no_such_map.json";
  write_json(dir.path / "c.json", doc);
  REQUIRE(run("simulate --config " + (dir.path / "c.json").string() + " --out " +
              (dir.path / "r.json").string()) == 2);

  std::ostringstream out, err;
  std::vector<std::string> args{"tlfleet", "simulate", "--config", (dir.path / "c.json").string(),
                                "--out", (dir.path / "r.json").string()};
  std::vector<char *> argv;
  for (auto &a : args)
    argv.push_back(a.data());
  REQUIRE(tlfleet::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err) == 2);
  REQUIRE(err.str().find("map not found") != std::string::npos);

  REQUIRE(run("simulate --config " + (dir.path / "missing.json").string() + " --out x.json") == 2);
  REQUIRE(run("simulate") == 2);
  REQUIRE(run("frobnicate") == 2);
  REQUIRE(run("gen-map --kind volcano --size 4 --out " + (dir.path / "m.json").string()) == 2);
  REQUIRE(run("gen-map --kind center --size 1 --out " + (dir.path / "m.json").string()) == 2);
  REQUIRE(run("batch --config " + (dir.path / "c.json").string() + " --seeds 3..1 --out x.json") == 2);
}

TEST_CASE("gen-map") {
  TempDir dir;
  REQUIRE(run("gen-map --kind center --size 4 --out " + (dir.path / "m.json").string()) == 0);
  const auto net = tlfleet::network::load_network_file(dir.path / "m.json");
  REQUIRE(net.size() == 16);
  double total = 0;
  for (double p : net.arrival_probs())
    total += p;
  REQUIRE(total == Catch::Approx(1.0));
  REQUIRE(tlfleet::network::to_json(net) == read_json(dir.path / "m.json"));

  REQUIRE(run("gen-map --kind uniform --size 2 --out " + (dir.path / "u.json").string()) == 0);
  const auto u = tlfleet::network::load_network_file(dir.path / "u.json");
  REQUIRE(u.size() == 4);
  for (double p : u.arrival_probs())
    REQUIRE(p == Catch::Approx(0.25));
}

TEST_CASE("batch rows, aggregates and consistency with simulate") {
  TempDir dir;
  const auto gen = "gen-map --kind corner --size 3 --out " + (dir.path / "map.json").string();
  REQUIRE(run(gen) == 0);
  auto doc = small_scenario();
  doc.erase("grid");
  doc["map"] = "map.json";
  write_json(dir.path / "c.json", doc);
  const auto cfg = (dir.path / "c.json").string();

  REQUIRE(run("batch --config " + cfg + " --seeds 1..2 --toggles all --out " +
              (dir.path / "b.json").string() + " --csv " + (dir.path / "b.csv").string()) == 0);
  const auto b = read_json(dir.path / "b.json");
  REQUIRE(b["cells"].size() == 4);
  std::size_t rows = 0;
  for (const auto &cell : b["cells"]) {
    rows += cell["rows"].size();
    double sum = 0;
    for (const auto &row : cell["rows"])
      sum += row["metrics"]["min_utility"].get<double>();
    REQUIRE(cell["aggregate"]["mean_min_utility"].get<double>() ==
            Catch::Approx(sum / cell["rows"].size()).margin(1e-9));
  }
  REQUIRE(rows == 8);
  std::ifstream csv(dir.path / "b.csv");
  std::string line;
  std::size_t seed_rows = 0, mean_rows = 0;
  while (std::getline(csv, line)) {
    seed_rows += line.rfind("seed,", 0) == 0;
    mean_rows += line.rfind("mean,", 0) == 0;
  }
  REQUIRE(seed_rows == 8);
  REQUIRE(mean_rows == 4);

  // One seed with everything off equals a plain simulate run.
  auto off = doc;
  off["toggles"] = {{"weight_correction", false}, {"rebalancing", false}};
  write_json(dir.path / "off.json", off);
  REQUIRE(run("batch --config " + cfg + " --seeds 4 --toggles off --out " + (dir.path / "b1.json").string()) == 0);
  REQUIRE(run("simulate --config " + (dir.path / "off.json").string() + " --seed 4 --out " +
              (dir.path / "s1.json").string()) == 0);
  REQUIRE(read_json(dir.path / "b1.json")["cells"][0]["rows"][0]["metrics"] ==
          read_json(dir.path / "s1.json")["metrics"]);
}

TEST_CASE("oracle-compare") {
  TempDir dir;
  write_json(dir.path / "c.json", small_scenario());
  REQUIRE(run("oracle-compare --config " + (dir.path / "c.json").string() + " --seeds 1..2 --out " +
              (dir.path / "o.json").string()) == 0);
  const auto r = read_json(dir.path / "o.json");
  REQUIRE(r["summary"].contains("mean_serving_rate_auction"));
  REQUIRE(r["summary"].contains("mean_serving_rate_oracle"));
  REQUIRE(r["summary"]["cycle_bound_violations"] == 0);

  // A single vehicle facing single requests: the auction is exact.
  auto one = small_scenario();
  one["vehicles"] = 1;
  write_json(dir.path / "one.json", one);
  REQUIRE(run("oracle-compare --config " + (dir.path / "one.json").string() + " --seeds 1 --out " +
              (dir.path / "o1.json").string()) == 0);
  for (const auto &cycle : read_json(dir.path / "o1.json")["seeds"][0]["cycles"])
    REQUIRE(cycle["gap"].get<double>() == Catch::Approx(0.0).margin(1e-9));

  auto crowded = small_scenario();
  crowded["vehicles"] = 12;
  write_json(dir.path / "big.json", crowded);
  REQUIRE(run("oracle-compare --config " + (dir.path / "big.json").string() + " --seeds 1 --out " +
              (dir.path / "o2.json").string()) == 2);
}
