#pragma once

#include "tlfleet/network/road_network.hpp"
#include "tlfleet/scltl/dfa.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace tlfleet::planner {

using network::RoadNetwork;
using scltl::Dfa;

class InvalidStateError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A request automaton together with its current progress.
struct TrackedAutomaton {
  const Dfa *dfa;
  Dfa::State state;
};

struct ProductState {
  NodeIndex node;
  std::vector<Dfa::State> dfa_states;

  friend bool operator==(const ProductState &, const ProductState &) = default;
};

/// Implicit product of the road network with m request automata.
///
/// Moving along (s, s') costs W(s, s') and advances every automaton on L(s').
/// The initial state is (position, current states); a state is accepting when
/// every automaton is. States are enumerated lazily.
class ProductAutomaton {
public:
  ProductAutomaton(const RoadNetwork &net, NodeIndex position, std::vector<TrackedAutomaton> tracked);

  const RoadNetwork &network() const { return *net_; }
  std::size_t automaton_count() const { return tracked_.size(); }
  const Dfa &automaton(std::size_t i) const { return *tracked_.at(i).dfa; }

  const ProductState &initial() const { return initial_; }
  bool accepting(const ProductState &s) const;

  struct Successor {
    ProductState state;
    Seconds weight;
  };
  std::vector<Successor> successors(const ProductState &s) const;

  /// Letter of node n projected onto automaton i.
  Dfa::Symbol symbol(std::size_t i, NodeIndex n) const { return symbols_[i][n]; }

private:
  const RoadNetwork *net_;
  std::vector<TrackedAutomaton> tracked_;
  std::vector<std::vector<Dfa::Symbol>> symbols_;
  ProductState initial_;
};

ProductAutomaton build_product(const RoadNetwork &net, NodeIndex position,
                               std::vector<TrackedAutomaton> tracked);

/// A trajectory on the road network with absolute arrival times;
/// arrival_times[0] == start_time.
struct Route {
  std::vector<NodeIndex> nodes;
  Seconds start_time = 0;
  std::vector<Seconds> arrival_times;

  Seconds duration() const { return arrival_times.back() - start_time; }
  Seconds end_time() const { return arrival_times.back(); }
};

/// Minimum-weight path from the initial product state to an accepting one,
/// projected onto the network. Among equal-cost paths the node sequence that
/// is lexicographically smallest by node index wins. Paths longer than
/// `max_duration` are not explored.
std::optional<Route> plan_route(const ProductAutomaton &product, Seconds start_time,
                                std::optional<Seconds> max_duration = std::nullopt);

/// Route timing for a node sequence; throws if two consecutive nodes are not joined by an edge.
Route make_route(const RoadNetwork &net, std::vector<NodeIndex> nodes, Seconds start_time);

} // namespace tlfleet::planner
