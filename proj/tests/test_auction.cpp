#include "support.hpp"

#include "tlfleet/auction/auction.hpp"
#include "tlfleet/auction/bidding.hpp"
#include "tlfleet/auction/oracle.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace tlfleet;
using namespace tlfleet::auction;

namespace {

std::vector<Agent> agents_from(const SigmaTable &sigma, const std::map<VehicleId, double> &history = {}) {
  std::vector<Agent> out;
  for (const auto &[v, row] : sigma) {
    std::map<RequestId, Offer> offers;
    for (const auto &[r, s] : row)
      offers.emplace(r, Offer{s, std::nullopt});
    auto it = history.find(v);
    out.emplace_back(v, it == history.end() ? 0.0 : it->second, offers);
  }
  return out;
}

double total_utility(const SigmaTable &sigma, const std::map<RequestId, VehicleId> &assignment) {
  double t = 0.0;
  for (const auto &[r, v] : assignment)
    t -= sigma.at(v).at(r);
  return t;
}

SigmaTable random_dense(std::mt19937_64 &rng, std::size_t nv, std::size_t nr) {
  std::uniform_int_distribution<int> s(1, 100);
  SigmaTable sigma;
  for (VehicleId v = 0; v < nv; ++v)
    for (RequestId r = 0; r < nr; ++r)
      sigma[v][r] = s(rng);
  return sigma;
}

std::vector<RequestId> ids(std::size_t n) {
  std::vector<RequestId> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = static_cast<RequestId>(i);
  return out;
}

} // namespace

TEST_CASE("bid arithmetic") {
  PriceTable prices;
  auto b = compute_bid(0, {{1, 5.0}, {2, 9.0}}, prices, 0.05);
  REQUIRE(b);
  REQUIRE(b->request == 1);
  REQUIRE(b->value == Catch::Approx(4.05));

  REQUIRE_FALSE(compute_bid(0, {}, prices, 0.05));

  prices.raise(7, 2.0);
  b = compute_bid(0, {{7, 3.0}}, prices, 0.05);
  REQUIRE(b->request == 7);
  REQUIRE(b->value == Catch::Approx(2.05));
}

TEST_CASE("bids against the outside option") {
  PriceTable prices;
  auto b = compute_bid(0, {{1, 5.0}}, prices, 0.5, -20.0);
  REQUIRE(b->value == Catch::Approx(0 + (-5.0) - (-20.0) + 0.5));
  REQUIRE_FALSE(compute_bid(0, {{1, 50.0}}, prices, 0.5, -20.0));
  // The outside option only matters when it beats the runner-up.
  b = compute_bid(0, {{1, 5.0}, {2, 9.0}}, prices, 0.5, -20.0);
  REQUIRE(b->value == Catch::Approx(4.5));
}

TEST_CASE("prices never decrease") {
  PriceTable p;
  REQUIRE(p.price(3) == 0.0);
  p.raise(3, 4.0);
  p.raise(3, 1.0);
  REQUIRE(p.price(3) == 4.0);
}

TEST_CASE("weight correction") {
  REQUIRE(weight_correction(10, 4, -0.5) == Catch::Approx(-3.0));
  REQUIRE(weight_correction(7, 7, -2.0) == 0.0);
  REQUIRE(weight_correction(10, 4, 0.0) == 0.0);
}

TEST_CASE("message bus delivers per sender in order") {
  MessageBus bus({0, 1, 2});
  const std::vector<VehicleId> all{0, 1, 2};
  bus.broadcast(AuctionMessage::history(0, 0, 1.0), all);
  bus.broadcast(AuctionMessage::history(0, 0, 2.0), all);
  bus.broadcast(AuctionMessage::preferred(1, 0, std::nullopt), all);
  REQUIRE(bus.pending() == 6);
  REQUIRE(bus.recv(2, 0).utility() == 1.0);
  REQUIRE(bus.recv(2, 1).preferred_request() == std::nullopt);
  REQUIRE(bus.recv(2, 0).utility() == 2.0);
  REQUIRE_THROWS_AS(bus.recv(2, 0), ProtocolError);
  REQUIRE_THROWS_AS(bus.recv(0, 0), ProtocolError);
  REQUIRE_THROWS_AS(AuctionMessage::history(0, 0, 1.0).bid_payload(), ProtocolError);
  REQUIRE(bus.trace().size() == 3);
  std::istringstream lines(bus.trace_jsonl());
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    REQUIRE(nlohmann::json::parse(line).contains("kind"));
    ++n;
  }
  REQUIRE(n == 3);
}

TEST_CASE("single vehicle single request") {
  auto agents = agents_from({{0, {{0, 4.0}}}});
  const auto out = run_auction(agents, ids(1), {});
  REQUIRE(out.assignment == std::map<RequestId, VehicleId>{{0, 0}});
  REQUIRE(out.unassigned.empty());
  REQUIRE_FALSE(out.round_limit_reached);
}

TEST_CASE("diagonal sigma matrix") {
  auto agents = agents_from({{0, {{0, 1.0}, {1, 10.0}}}, {1, {{0, 10.0}, {1, 1.0}}}});
  const auto out = run_auction(agents, ids(2), {});
  REQUIRE(out.assignment == std::map<RequestId, VehicleId>{{0, 0}, {1, 1}});
}

TEST_CASE("request nobody can serve stays unassigned") {
  auto agents = agents_from({{0, {{0, 3.0}}}});
  const auto out = run_auction(agents, ids(2), {});
  REQUIRE(out.assignment.size() == 1);
  REQUIRE(out.unassigned == std::vector<RequestId>{1});
}

TEST_CASE("more vehicles than requests terminates") {
  auto agents = agents_from({{0, {{0, 3.0}}}, {1, {{0, 3.0}}}, {2, {{0, 2.0}}}, {3, {{0, 9.0}}}});
  const auto out = run_auction(agents, ids(1), {});
  REQUIRE_FALSE(out.round_limit_reached);
  REQUIRE(out.assignment.at(0) == 2);
}

TEST_CASE("equal bids go to the lowest vehicle id") {
  auto agents = agents_from({{4, {{0, 3.0}}}, {2, {{0, 3.0}}}});
  REQUIRE(run_auction(agents, ids(1), {}).assignment.at(0) == 2);
}

TEST_CASE("weight correction favours the vehicle with less history") {
  const SigmaTable sigma{{0, {{0, 5.0}}}, {1, {{0, 5.0}}}};
  AuctionParams params;
  params.alpha = -0.5;
  auto agents = agents_from(sigma, {{0, 40.0}, {1, 0.0}});
  REQUIRE(run_auction(agents, ids(1), params).assignment.at(0) == 1);
  params.alpha = 0.0;
  agents = agents_from(sigma, {{0, 40.0}, {1, 0.0}});
  REQUIRE(run_auction(agents, ids(1), params).assignment.at(0) == 0);
}

TEST_CASE("shifting every utility history leaves the outcome unchanged") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed);
    const auto sigma = random_dense(rng, 4, 3);
    std::map<VehicleId, double> h, shifted;
    std::uniform_int_distribution<int> u(0, 4);
    for (VehicleId v = 0; v < 4; ++v) {
      h[v] = 12.0 * u(rng);
      shifted[v] = h[v] + 120.0;
    }
    AuctionParams params;
    params.alpha = -0.3;
    auto a = agents_from(sigma, h);
    auto b = agents_from(sigma, shifted);
    const auto out_a = run_auction(a, ids(3), params);
    const auto out_b = run_auction(b, ids(3), params);
    REQUIRE(out_a.assignment == out_b.assignment);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t k = 0; k < a[i].bid_log().size(); ++k)
        REQUIRE(a[i].bid_log()[k].value == Catch::Approx(b[i].bid_log()[k].value));
  }
}

TEST_CASE("auction invariants on random instances") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t nv = 1 + seed % 6, nr = 1 + (seed / 6) % 6;
    const auto sigma = random_dense(rng, nv, nr);
    auto agents = agents_from(sigma);
    const auto out = run_auction(agents, ids(nr), {});
    REQUIRE_FALSE(out.round_limit_reached);

    // One request per vehicle, one vehicle per request.
    std::set<VehicleId> winners;
    for (const auto &[r, v] : out.assignment)
      REQUIRE(winners.insert(v).second);
    REQUIRE(out.assignment.size() == std::min(nv, nr));

    const double eps = 1.0 / static_cast<double>(nv);
    const auto best = optimal_assignment_oracle(sigma, ids(nr));
    REQUIRE(total_utility(sigma, out.assignment) >= best.total_utility - static_cast<double>(nr) * eps - 1e-9);

    // At most one bid per vehicle per round.
    for (const auto &a : agents) {
      std::set<unsigned> rounds;
      for (const auto &b : a.bid_log())
        REQUIRE(rounds.insert(b.round).second);
    }
  }
}

TEST_CASE("message order does not change the outcome") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed);
    const auto sigma = random_dense(rng, 5, 4);
    auto a = agents_from(sigma, {{0, 3.0}, {1, 9.0}, {2, 1.0}});
    auto b = agents_from(sigma, {{0, 3.0}, {1, 9.0}, {2, 1.0}});
    AuctionParams params;
    params.alpha = -0.2;
    const auto ordered = run_auction(a, ids(4), params);
    params.shuffle_seed = seed * 7 + 1;
    const auto shuffled = run_auction(b, ids(4), params);
    REQUIRE(ordered.assignment == shuffled.assignment);
    REQUIRE(ordered.rounds == shuffled.rounds);
  }
}

TEST_CASE("local prices never decrease during an auction") {
  std::mt19937_64 rng(99);
  const auto sigma = random_dense(rng, 5, 5);
  auto agents = agents_from(sigma);
  const auto out = run_auction(agents, ids(5), {});
  // The winning bid recorded by each holder equals its final local price.
  for (const auto &a : agents)
    if (a.holding())
      REQUIRE(a.prices().price(*a.holding()) >= a.bid_log().back().value - 1e-12);
  REQUIRE(out.trace_jsonl.size() > 0);
}

TEST_CASE("oracle examples") {
  REQUIRE(optimal_assignment_oracle({{0, {{0, -1.0}}}}, {0}).assignment ==
          std::map<RequestId, VehicleId>{{0, 0}});
  // Utilities [[1,10],[10,1]] are sigmas of the opposite sign.
  const auto r = optimal_assignment_oracle({{0, {{0, -1.0}, {1, -10.0}}}, {1, {{0, -10.0}, {1, -1.0}}}}, {0, 1});
  REQUIRE(r.assignment == std::map<RequestId, VehicleId>{{0, 1}, {1, 0}});
  REQUIRE(r.total_utility == Catch::Approx(20.0));
  SigmaTable big;
  for (VehicleId v = 0; v < 9; ++v)
    big[v][0] = 1.0;
  REQUIRE_THROWS_AS(optimal_assignment_oracle(big, {0}), OracleCapError);
}

TEST_CASE("oracle matches permutation enumeration") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    auto sigma = random_dense(rng, 5, 5);
    // Knock out some pairs so that partial assignments matter.
    std::bernoulli_distribution drop(0.3);
    for (auto &[v, row] : sigma)
      for (RequestId r = 0; r < 5; ++r)
        if (drop(rng))
          row.erase(r);
    const auto best = optimal_assignment_oracle(sigma, ids(5));
    const auto [count, total] = testsupport::permutation_optimum(sigma, ids(5));
    REQUIRE(best.assignment.size() == count);
    REQUIRE(best.total_utility == Catch::Approx(total));
    REQUIRE(total_utility(sigma, best.assignment) == Catch::Approx(total));
  }
}

TEST_CASE("surplus vehicles settle quickly at the optimum") {
  // Three vehicles contest two requests; optimum v0->r0, v1->r1 costs 11 - 2 = 9.
  const SigmaTable sigma{{0, {{0, 5.0}, {1, 4.0}}}, {1, {{0, 5.0}, {1, 6.0}}}, {2, {{0, 7.0}, {1, 6.0}}}};
  auto agents = agents_from(sigma);
  const auto out = run_auction(agents, ids(2), {});
  REQUIRE_FALSE(out.round_limit_reached);
  REQUIRE(out.rounds < 200);
  REQUIRE(total_utility(sigma, out.assignment) ==
          Catch::Approx(optimal_assignment_oracle(sigma, ids(2)).total_utility).margin(2.0 / 3.0));
}

TEST_CASE("weight correction never stalls the auction") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t nv = 2 + seed % 5, nr = 1 + (seed / 5) % 5;
    const auto sigma = random_dense(rng, nv, nr);
    std::map<VehicleId, double> h;
    std::uniform_real_distribution<double> u(0, 500);
    for (VehicleId v = 0; v < nv; ++v)
      h[v] = u(rng);
    AuctionParams params;
    params.alpha = -1.0;
    auto agents = agents_from(sigma, h);
    const auto out = run_auction(agents, ids(nr), params);
    REQUIRE_FALSE(out.round_limit_reached);
    REQUIRE(out.assignment.size() == std::min(nv, nr));
  }
}
