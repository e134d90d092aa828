#include "tlfleet/sim/requests.hpp"

#include <algorithm>
#include <cmath>

namespace tlfleet::sim {

std::vector<Seconds> arrival_times(std::size_t n, Seconds horizon, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(0.0, static_cast<double>(horizon));
  std::vector<Seconds> out(n);
  for (auto &t : out)
    t = std::min<Seconds>(horizon - 1, static_cast<Seconds>(std::floor(u(rng))));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Seconds> poisson_arrivals(double rate, Seconds horizon, std::mt19937_64 &rng) {
  std::vector<Seconds> out;
  if (rate <= 0.0)
    return out;
  std::exponential_distribution<double> gap(rate);
  for (double t = gap(rng); t < static_cast<double>(horizon); t += gap(rng))
    out.push_back(static_cast<Seconds>(std::floor(t)));
  return out;
}

std::optional<std::string> unique_label(const network::RoadNetwork &net, NodeIndex node) {
  for (const auto &l : net.labels(node))
    if (net.nodes_with_label(l).size() == 1)
      return l;
  return std::nullopt;
}

namespace {

NodeIndex uniform_other(std::size_t n, NodeIndex excluded, std::mt19937_64 &rng) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 2);
  auto k = static_cast<NodeIndex>(pick(rng));
  return k >= excluded ? k + 1 : k;
}

std::string any_label(const network::RoadNetwork &net, NodeIndex node, std::mt19937_64 &rng) {
  const auto &labels = net.labels(node);
  std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
  return labels[pick(rng)];
}

// Two labels of the same node, distinct when the node has more than one.
std::pair<std::string, std::string> label_pair(const network::RoadNetwork &net, NodeIndex node,
                                               std::mt19937_64 &rng) {
  const auto &labels = net.labels(node);
  if (labels.size() == 1)
    return {labels[0], labels[0]};
  std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
  const auto a = pick(rng);
  auto b = pick(rng);
  while (b == a)
    b = pick(rng);
  return {labels[a], labels[b]};
}

} // namespace

std::optional<planner::Request> sample_request(const network::RoadNetwork &net, RequestId id,
                                               NodeIndex pickup, scltl::PatternKind kind,
                                               Seconds t_req, int seats, Seconds omega_max,
                                               Seconds delta_max, std::mt19937_64 &rng) {
  if (net.size() < 2)
    return std::nullopt;
  const auto pick = unique_label(net, pickup);
  if (!pick)
    return std::nullopt;

  std::vector<std::string> dest;
  const NodeIndex a = uniform_other(net.size(), pickup, rng);
  NodeIndex b = uniform_other(net.size(), pickup, rng);
  for (int tries = 0; b == a && net.size() > 2 && tries < 64; ++tries)
    b = uniform_other(net.size(), pickup, rng);
  switch (kind) {
  case scltl::PatternKind::Seq2:
    dest = {any_label(net, a, rng), any_label(net, b, rng)};
    break;
  case scltl::PatternKind::AltThen: {
    // (d1 | d2) & d3 with d1, d3 at node a.
    auto [d1, d3] = label_pair(net, a, rng);
    dest = {d1, any_label(net, b, rng), d3};
    break;
  }
  case scltl::PatternKind::ThenAlt: {
    // d1 & (d2 | d3) with d1, d2 at node a.
    auto [d1, d2] = label_pair(net, a, rng);
    dest = {d1, d2, any_label(net, b, rng)};
    break;
  }
  }

  try {
    return planner::make_request(net, id, *pick, scltl::instantiate_pattern(kind, *pick, dest), t_req,
                                 seats, omega_max, delta_max);
  } catch (const planner::InfeasibleRequestError &) {
    return std::nullopt;
  }
}

std::vector<planner::Request> generate_requests(const ScenarioConfig &config) {
  config.validate();
  const auto &net = *config.network;
  std::mt19937_64 time_rng(config.seed);
  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);

  const auto times = arrival_times(config.n_requests, config.horizon, time_rng);
  std::discrete_distribution<NodeIndex> pickup_dist(net.arrival_probs().begin(),
                                                    net.arrival_probs().end());
  std::uniform_int_distribution<std::size_t> pattern_dist(0, config.patterns.size() - 1);

  std::vector<planner::Request> out;
  out.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::optional<planner::Request> r;
    for (int tries = 0; tries < 100 && !r; ++tries) {
      const NodeIndex pickup = pickup_dist(rng);
      const auto kind = config.patterns[pattern_dist(rng)];
      r = sample_request(net, static_cast<RequestId>(i), pickup, kind, times[i], config.seats,
                         config.omega_max, config.delta_max, rng);
    }
    if (!r)
      throw ConfigError("no satisfiable request found after 100 samples; check the map labels");
    out.push_back(std::move(*r));
  }
  return out;
}

network::RoadNetwork fill_avg_request_utilities(const network::RoadNetwork &net,
                                                const std::vector<scltl::PatternKind> &patterns,
                                                std::uint64_t seed, std::size_t samples) {
  std::vector<std::optional<double>> estimate(net.size());
  std::mt19937_64 rng(seed);
  double total = 0.0;
  std::size_t known = 0;
  for (NodeIndex s = 0; s < net.size(); ++s) {
    if (net.has_avg_request_utility(s)) {
      estimate[s] = net.avg_request_utility(s);
      continue;
    }
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < samples; ++k) {
      const auto kind = patterns[k % patterns.size()];
      if (auto r = sample_request(net, 0, s, kind, 0, 1, 0, 0, rng)) {
        sum += static_cast<double>(r->t_star);
        ++count;
      }
    }
    if (count > 0)
      estimate[s] = sum / static_cast<double>(count);
  }
  for (const auto &e : estimate)
    if (e) {
      total += *e;
      ++known;
    }
  const double fallback = known > 0 ? total / static_cast<double>(known) : 0.0;
  std::vector<double> values(net.size());
  for (NodeIndex s = 0; s < net.size(); ++s)
    values[s] = estimate[s].value_or(fallback);
  return net.with_avg_request_utilities(std::move(values));
}

} // namespace tlfleet::sim
