#include "support.hpp"

#include "tlfleet/network/generators.hpp"
#include "tlfleet/network/io.hpp"
#include "tlfleet/network/paths.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <numeric>

using namespace tlfleet;
using namespace tlfleet::network;
using nlohmann::json;

namespace {

json line_doc() {
  return json::parse(R"({
    "alphabet": ["a", "b"],
    "nodes": [{"id": "s0", "labels": []}, {"id": "s1", "labels": ["a"]}, {"id": "s2", "labels": ["b"]}],
    "edges": [{"from": "s0", "to": "s1", "weight": 2}, {"from": "s1", "to": "s2", "weight": 3}]
  })");
}

NetworkError::Kind load_error(const json &doc) {
  try {
    load_network(doc);
  } catch (const NetworkError &e) {
    return e.kind();
  }
  FAIL("document accepted");
  return NetworkError::Kind::Schema;
}

RoadNetwork bidirectional_line(std::size_t n) {
  std::vector<NodeSpec> nodes;
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i) {
    nodes.push_back({"s" + std::to_string(i), {}, std::nullopt, std::nullopt});
    if (i > 0) {
      edges.push_back({"s" + std::to_string(i - 1), "s" + std::to_string(i), 1});
      edges.push_back({"s" + std::to_string(i), "s" + std::to_string(i - 1), 1});
    }
  }
  return RoadNetwork({}, nodes, edges);
}

} // namespace

TEST_CASE("load a line network") {
  const auto net = load_network(line_doc());
  REQUIRE(net.size() == 3);
  REQUIRE(net.edge_count() == 2);
  REQUIRE(net.index_of("s2") == 2);
  REQUIRE(net.labels(1) == std::vector<std::string>{"a"});
  REQUIRE(net.edge_weight(0, 1) == 2);
  REQUIRE_FALSE(net.edge_weight(1, 0));
  for (NodeIndex s = 0; s < 3; ++s)
    REQUIRE(net.arrival_prob(s) == Catch::Approx(1.0 / 3));
}

TEST_CASE("load rejects invalid documents") {
  auto doc = line_doc();
  doc["edges"][0]["weight"] = 0;
  REQUIRE(load_error(doc) == NetworkError::Kind::NonpositiveWeight);

  doc = line_doc();
  doc["edges"][0]["to"] = "nowhere";
  REQUIRE(load_error(doc) == NetworkError::Kind::DanglingEndpoint);

  doc = line_doc();
  doc["nodes"][0]["arrival_prob"] = 1.5;
  REQUIRE(load_error(doc) == NetworkError::Kind::ProbabilityOutOfRange);

  doc = line_doc();
  doc["nodes"][1]["labels"] = {"zzz"};
  REQUIRE(load_error(doc) == NetworkError::Kind::UnknownProposition);

  doc = line_doc();
  doc["nodes"][1]["id"] = "s0";
  REQUIRE(load_error(doc) == NetworkError::Kind::DuplicateNode);

  doc = line_doc();
  doc.erase("edges");
  REQUIRE(load_error(doc) == NetworkError::Kind::Schema);
  REQUIRE(load_error(json::array()) == NetworkError::Kind::Schema);
}

TEST_CASE("missing arrival probabilities default to zero when some are given") {
  auto doc = line_doc();
  doc["nodes"][0]["arrival_prob"] = 1.0;
  const auto net = load_network(doc);
  REQUIRE(net.arrival_prob(0) == 1.0);
  REQUIRE(net.arrival_prob(1) == 0.0);
}

TEST_CASE("map file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "tlfleet_roundtrip_map.json";
  auto net = make_grid({3, 4, 1, 9, 5});
  net = net.with_arrival_probs(make_probability_map(net, ProbabilityKind::Corner, 0.4, 2));
  save_network_file(net, path);
  const auto back = load_network_file(path);
  REQUIRE(to_json(back) == to_json(net));
  std::filesystem::remove(path);
  REQUIRE_THROWS_WITH(load_network_file(path), Catch::Matchers::ContainsSubstring("map not found"));
}

TEST_CASE("shortest travel time on a line") {
  const auto net = load_network(line_doc());
  REQUIRE(shortest_travel_time(net, 0, 2) == 5);
  REQUIRE(shortest_travel_time(net, 1, 1) == 0);
  REQUIRE_FALSE(shortest_travel_time(net, 2, 0));
  REQUIRE(shortest_path(net, 0, 2) == std::vector<NodeIndex>{0, 1, 2});
}

TEST_CASE("shortest paths obey the triangle inequality") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const auto net = testsupport::random_graph(rng, 3 + seed % 18, 0.25, 9);
    const DistanceTable d(net);
    for (NodeIndex a = 0; a < net.size(); ++a)
      for (NodeIndex b = 0; b < net.size(); ++b)
        for (NodeIndex c = 0; c < net.size(); ++c) {
          const auto ab = d.at(a, b), bc = d.at(b, c), ac = d.at(a, c);
          if (ab && bc) {
            REQUIRE(ac);
            REQUIRE(*ac <= *ab + *bc);
          }
        }
    for (NodeIndex a = 0; a < net.size(); ++a)
      REQUIRE(d.at(a, 1 % net.size()) == shortest_travel_time(net, a, 1 % net.size()));
  }
}

TEST_CASE("neighbor rings") {
  const auto line = bidirectional_line(4);
  auto rings = neighbor_rings(line, 0, 2);
  REQUIRE(rings == DegreeRings{{1}, {2}});

  const RoadNetwork lonely({}, {{"x", {}, std::nullopt, std::nullopt}}, {});
  REQUIRE(neighbor_rings(lonely, 0, 3) == DegreeRings{{}, {}, {}});

  const auto grid = make_grid({2, 2, 1, 1, 1});
  rings = neighbor_rings(grid, grid.index_of("n0_0"), 2);
  REQUIRE(rings.size() == 2);
  REQUIRE(rings[0] == std::vector<NodeIndex>{grid.index_of("n0_1"), grid.index_of("n1_0")});
  REQUIRE(rings[1] == std::vector<NodeIndex>{grid.index_of("n1_1")});
}

TEST_CASE("neighbor rings match a brute-force hop computation") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    const auto net = testsupport::random_graph(rng, 1 + seed % 10, 0.3, 3);
    const NodeIndex center = static_cast<NodeIndex>(seed % net.size());
    // Relax hop counts until nothing changes.
    std::vector<std::size_t> hops(net.size(), 1000);
    hops[center] = 0;
    for (bool changed = true; changed;) {
      changed = false;
      for (NodeIndex a = 0; a < net.size(); ++a)
        for (NodeIndex b = 0; b < net.size(); ++b)
          if (net.edge_weight(a, b) && hops[a] + 1 < hops[b]) {
            hops[b] = hops[a] + 1;
            changed = true;
          }
    }
    const auto rings = neighbor_rings(net, center, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      std::vector<NodeIndex> expected;
      for (NodeIndex n = 0; n < net.size(); ++n)
        if (hops[n] == i + 1)
          expected.push_back(n);
      REQUIRE(rings[i] == expected);
    }
  }
}

TEST_CASE("grid generator") {
  const auto net = make_grid({3, 5, 2, 7, 42});
  REQUIRE(net.size() == 15);
  REQUIRE(net.edge_count() == 2 * (3 * 4 + 2 * 5));
  REQUIRE(net.labels(net.index_of("n1_3")) == std::vector<std::string>{"col3", "n1_3", "row1"});
  for (NodeIndex a = 0; a < net.size(); ++a)
    for (const auto &e : net.out_edges(a)) {
      REQUIRE(e.weight >= 2);
      REQUIRE(e.weight <= 7);
      REQUIRE(net.edge_weight(e.to, a) == e.weight);
    }
  REQUIRE(to_json(make_grid({3, 5, 2, 7, 42})) == to_json(net));
  REQUIRE(make_grid({8, 23, 1, 1, 1}).size() == 184);
}

TEST_CASE("probability maps") {
  const auto four = make_grid({2, 2, 1, 1, 1});
  for (double p : make_probability_map(four, ProbabilityKind::Uniform, 0.5, 1))
    REQUIRE(p == Catch::Approx(0.25));

  const RoadNetwork single({}, {{"x", {}, std::nullopt, std::nullopt}}, {});
  REQUIRE(make_probability_map(single, ProbabilityKind::Center, 0.5, 1)[0] == Catch::Approx(1.0));

  // Peaks at both ends of the line: weight 1 at the peak and 1/2 at its
  // neighbour, scaled to 0.3 per peak; the remaining 0.4 is split evenly.
  const auto line = bidirectional_line(6);
  const auto probs = make_probability_map(line, ProbabilityKind::TwoPeaks, 0.3, 1);
  const double base = 0.4 / 6;
  const std::vector<double> expected{0.2 + base, 0.1 + base, base, base, 0.1 + base, 0.2 + base};
  for (std::size_t i = 0; i < 6; ++i)
    REQUIRE(probs[i] == Catch::Approx(expected[i]).margin(1e-12));

  const auto grid = make_grid({5, 5, 1, 1, 1});
  const auto center = make_probability_map(grid, ProbabilityKind::Center, 0.5, 1);
  REQUIRE(std::max_element(center.begin(), center.end()) - center.begin() == grid.index_of("n2_2"));
  const auto corner = make_probability_map(grid, ProbabilityKind::Corner, 0.5, 1);
  REQUIRE(std::max_element(corner.begin(), corner.end()) - corner.begin() == grid.index_of("n0_0"));
}

TEST_CASE("probability maps sum to one") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed);
    const auto net = testsupport::random_graph(rng, 1 + seed % 12, 0.3, 3);
    for (auto kind : {ProbabilityKind::Uniform, ProbabilityKind::Center, ProbabilityKind::Corner,
                      ProbabilityKind::TwoPeaks})
      for (double mass : {0.1, 0.5, 1.0}) {
        const auto p = make_probability_map(net, kind, mass, 1 + seed % 3);
        REQUIRE(std::accumulate(p.begin(), p.end(), 0.0) == Catch::Approx(1.0).margin(1e-9));
        for (double x : p)
          REQUIRE(x >= 0.0);
      }
  }
}
