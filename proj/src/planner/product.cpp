#include "tlfleet/planner/product.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <unordered_map>

namespace tlfleet::planner {

ProductAutomaton::ProductAutomaton(const RoadNetwork &net, NodeIndex position,
                                   std::vector<TrackedAutomaton> tracked)
    : net_(&net), tracked_(std::move(tracked)) {
  if (position >= net.size())
    throw InvalidStateError("position is not a network node");
  initial_.node = position;
  for (const auto &t : tracked_) {
    if (t.dfa == nullptr || !t.dfa->valid(t.state))
      throw InvalidStateError("tracked automaton state is not a state of its DFA");
    initial_.dfa_states.push_back(t.state);
    std::vector<Dfa::Symbol> row(net.size());
    for (NodeIndex n = 0; n < net.size(); ++n)
      row[n] = t.dfa->symbol(net.labels(n));
    symbols_.push_back(std::move(row));
  }
}

bool ProductAutomaton::accepting(const ProductState &s) const {
  for (std::size_t i = 0; i < tracked_.size(); ++i)
    if (!tracked_[i].dfa->accepting(s.dfa_states[i]))
      return false;
  return true;
}

std::vector<ProductAutomaton::Successor> ProductAutomaton::successors(const ProductState &s) const {
  std::vector<Successor> out;
  for (const auto &e : net_->out_edges(s.node)) {
    Successor next{{e.to, s.dfa_states}, e.weight};
    for (std::size_t i = 0; i < tracked_.size(); ++i)
      next.state.dfa_states[i] = tracked_[i].dfa->step(s.dfa_states[i], symbols_[i][e.to]);
    out.push_back(std::move(next));
  }
  return out;
}

ProductAutomaton build_product(const RoadNetwork &net, NodeIndex position,
                               std::vector<TrackedAutomaton> tracked) {
  return ProductAutomaton(net, position, std::move(tracked));
}

Route make_route(const RoadNetwork &net, std::vector<NodeIndex> nodes, Seconds start_time) {
  Route r;
  r.start_time = start_time;
  r.arrival_times.push_back(start_time);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    auto w = net.edge_weight(nodes[i - 1], nodes[i]);
    if (!w)
      throw std::invalid_argument("route uses a missing edge " + net.id(nodes[i - 1]) + " -> " +
                                  net.id(nodes[i]));
    r.arrival_times.push_back(r.arrival_times.back() + *w);
  }
  r.nodes = std::move(nodes);
  return r;
}

namespace {

struct StateHash {
  std::size_t operator()(const ProductState &s) const noexcept {
    std::size_t h = std::hash<NodeIndex>{}(s.node);
    for (auto q : s.dfa_states)
      h = h * 1000003U ^ std::hash<Dfa::State>{}(q);
    return h;
  }
};

} // namespace

std::optional<Route> plan_route(const ProductAutomaton &product, Seconds start_time,
                                std::optional<Seconds> max_duration) {
  const RoadNetwork &net = product.network();
  if (product.accepting(product.initial()))
    return make_route(net, {product.initial().node}, start_time);

  using Index = std::uint32_t;
  std::vector<ProductState> states;
  std::vector<Seconds> dist;
  std::vector<std::vector<Index>> preds;
  std::vector<bool> settled;
  std::unordered_map<ProductState, Index, StateHash> index;

  auto intern = [&](const ProductState &s) {
    auto [it, fresh] = index.emplace(s, static_cast<Index>(states.size()));
    if (fresh) {
      states.push_back(s);
      dist.push_back(std::numeric_limits<Seconds>::max());
      preds.emplace_back();
      settled.push_back(false);
    }
    return it->second;
  };

  using Item = std::pair<Seconds, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  const Index root = intern(product.initial());
  dist[root] = 0;
  heap.emplace(0, root);

  std::optional<Seconds> best;
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[u] || d != dist[u])
      continue;
    if (best && d >= *best)
      break;
    settled[u] = true;
    if (product.accepting(states[u])) {
      best = d;
      continue;
    }
    for (auto &succ : product.successors(states[u])) {
      const Seconds nd = d + succ.weight;
      if (max_duration && nd > *max_duration)
        continue;
      if (best && nd > *best)
        continue;
      const Index v = intern(succ.state);
      if (nd < dist[v]) {
        dist[v] = nd;
        preds[v].assign(1, u);
        heap.emplace(nd, v);
      } else if (nd == dist[v]) {
        preds[v].push_back(u);
      }
    }
  }
  if (!best)
    return std::nullopt;

  // Every state on some optimal path to an optimal accepting state.
  std::vector<bool> useful(states.size(), false);
  std::vector<Index> stack;
  for (Index s = 0; s < states.size(); ++s) {
    if (dist[s] == *best && product.accepting(states[s])) {
      useful[s] = true;
      stack.push_back(s);
    }
  }
  std::vector<std::vector<Index>> children(states.size());
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    for (Index u : preds[v]) {
      children[u].push_back(v);
      if (!useful[u]) {
        useful[u] = true;
        stack.push_back(u);
      }
    }
  }

  // Lexicographically smallest node sequence through the optimal-path DAG.
  std::vector<NodeIndex> nodes{states[root].node};
  std::vector<Index> frontier{root};
  for (;;) {
    const bool done = std::any_of(frontier.begin(), frontier.end(), [&](Index s) {
      return dist[s] == *best && product.accepting(states[s]);
    });
    if (done)
      break;
    NodeIndex next_node = std::numeric_limits<NodeIndex>::max();
    for (Index u : frontier)
      for (Index v : children[u])
        next_node = std::min(next_node, states[v].node);
    std::vector<Index> next;
    for (Index u : frontier)
      for (Index v : children[u])
        if (states[v].node == next_node)
          next.push_back(v);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    TLFLEET_ASSERT(!next.empty(), "optimal path DAG has a dead end");
    nodes.push_back(next_node);
    frontier = std::move(next);
  }
  Route route = make_route(net, std::move(nodes), start_time);
  TLFLEET_ASSERT(route.duration() == *best, "projected route cost differs from search cost");
  return route;
}

} // namespace tlfleet::planner
