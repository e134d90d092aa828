#include "tlfleet/network/paths.hpp"

#include <deque>
#include <functional>
#include <limits>
#include <queue>

namespace tlfleet::network {

namespace {

constexpr Seconds unreachable = std::numeric_limits<Seconds>::max();

struct Sssp {
  std::vector<Seconds> dist;
  std::vector<NodeIndex> pred;
};

Sssp dijkstra(const RoadNetwork &net, NodeIndex from, std::optional<NodeIndex> stop_at) {
  const std::size_t n = net.size();
  Sssp out{std::vector<Seconds>(n, unreachable), std::vector<NodeIndex>(n, 0)};
  using Item = std::pair<Seconds, NodeIndex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  out.dist.at(from) = 0;
  out.pred[from] = from;
  heap.emplace(0, from);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d != out.dist[u])
      continue;
    if (stop_at && u == *stop_at)
      break;
    for (const Edge &e : net.out_edges(u)) {
      const Seconds nd = d + e.weight;
      if (nd < out.dist[e.to] || (nd == out.dist[e.to] && u < out.pred[e.to])) {
        const bool improved = nd < out.dist[e.to];
        out.dist[e.to] = nd;
        out.pred[e.to] = u;
        if (improved)
          heap.emplace(nd, e.to);
      }
    }
  }
  return out;
}

} // namespace

std::optional<Seconds> shortest_travel_time(const RoadNetwork &net, NodeIndex from, NodeIndex to) {
  if (to >= net.size())
    throw std::out_of_range("node index out of range");
  const Sssp s = dijkstra(net, from, to);
  if (s.dist[to] == unreachable)
    return std::nullopt;
  return s.dist[to];
}

std::optional<std::vector<NodeIndex>> shortest_path(const RoadNetwork &net, NodeIndex from,
                                                    NodeIndex to) {
  if (to >= net.size())
    throw std::out_of_range("node index out of range");
  const Sssp s = dijkstra(net, from, to);
  if (s.dist[to] == unreachable)
    return std::nullopt;
  std::vector<NodeIndex> path{to};
  while (path.back() != from)
    path.push_back(s.pred[path.back()]);
  return std::vector<NodeIndex>(path.rbegin(), path.rend());
}

std::vector<std::optional<Seconds>> travel_times_from(const RoadNetwork &net, NodeIndex from) {
  const Sssp s = dijkstra(net, from, std::nullopt);
  std::vector<std::optional<Seconds>> out(net.size());
  for (std::size_t i = 0; i < net.size(); ++i)
    if (s.dist[i] != unreachable)
      out[i] = s.dist[i];
  return out;
}

std::vector<std::optional<std::size_t>> hop_distances(const RoadNetwork &net, NodeIndex from) {
  std::vector<std::optional<std::size_t>> hops(net.size());
  std::deque<NodeIndex> queue{from};
  hops.at(from) = 0;
  while (!queue.empty()) {
    const NodeIndex u = queue.front();
    queue.pop_front();
    for (const Edge &e : net.out_edges(u)) {
      if (!hops[e.to]) {
        hops[e.to] = *hops[u] + 1;
        queue.push_back(e.to);
      }
    }
  }
  return hops;
}

DistanceTable::DistanceTable(const RoadNetwork &net) : n_(net.size()), table_(n_ * n_, -1) {
  for (NodeIndex from = 0; from < n_; ++from) {
    const Sssp s = dijkstra(net, from, std::nullopt);
    for (std::size_t to = 0; to < n_; ++to)
      if (s.dist[to] != unreachable)
        table_[from * n_ + to] = s.dist[to];
  }
}

DegreeRings neighbor_rings(const RoadNetwork &net, NodeIndex center, std::size_t k_w) {
  DegreeRings rings(k_w);
  const auto hops = hop_distances(net, center);
  for (NodeIndex n = 0; n < net.size(); ++n)
    if (hops[n] && *hops[n] >= 1 && *hops[n] <= k_w)
      rings[*hops[n] - 1].push_back(n);
  return rings;
}

} // namespace tlfleet::network
