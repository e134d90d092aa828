#pragma once

#include "tlfleet/types.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace tlfleet::network {

class NetworkError : public std::runtime_error {
public:
  enum class Kind {
    Schema,
    NonpositiveWeight,
    ProbabilityOutOfRange,
    DanglingEndpoint,
    DuplicateNode,
    UnknownProposition,
  };

  NetworkError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

struct Edge {
  NodeIndex to;
  Seconds weight;
};

struct NodeSpec {
  std::string id;
  std::vector<std::string> labels;
  std::optional<double> arrival_prob;
  std::optional<double> avg_request_utility;
};

struct EdgeSpec {
  std::string from;
  std::string to;
  Seconds weight;
};

/// Weighted transition system of the road map: directed edges with positive
/// integer travel times, a set of propositions per node, and the per-node
/// request statistics used for rebalancing.
///
/// Node indices follow declaration order. Arrival probabilities that are not
/// given default to 0, or to a uniform split when no node specifies one.
class RoadNetwork {
public:
  RoadNetwork(std::vector<std::string> alphabet, std::vector<NodeSpec> nodes,
              std::vector<EdgeSpec> edges);

  std::size_t size() const { return ids_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  const std::string &id(NodeIndex n) const { return ids_.at(n); }
  std::optional<NodeIndex> find(const std::string &id) const;
  NodeIndex index_of(const std::string &id) const;

  const std::vector<std::string> &alphabet() const { return alphabet_; }
  /// Sorted label set L(s).
  const std::vector<std::string> &labels(NodeIndex n) const { return labels_.at(n); }
  /// Nodes whose label contains `prop`, ascending.
  std::vector<NodeIndex> nodes_with_label(const std::string &prop) const;

  std::span<const Edge> out_edges(NodeIndex n) const { return out_.at(n); }
  std::optional<Seconds> edge_weight(NodeIndex from, NodeIndex to) const;

  double arrival_prob(NodeIndex n) const { return arrival_prob_.at(n); }
  const std::vector<double> &arrival_probs() const { return arrival_prob_; }

  bool has_avg_request_utility(NodeIndex n) const { return avg_utility_.at(n).has_value(); }
  /// U_r_avg(s); 0 when unknown.
  double avg_request_utility(NodeIndex n) const { return avg_utility_.at(n).value_or(0.0); }
  const std::vector<std::optional<double>> &avg_request_utilities() const { return avg_utility_; }

  RoadNetwork with_arrival_probs(std::vector<double> probs) const;
  RoadNetwork with_avg_request_utilities(std::vector<double> utilities) const;

  std::vector<NodeSpec> node_specs() const;
  std::vector<EdgeSpec> edge_specs() const;

private:
  std::vector<std::string> alphabet_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<std::vector<Edge>> out_;
  std::size_t edge_count_ = 0;
  std::vector<double> arrival_prob_;
  std::vector<std::optional<double>> avg_utility_;
};

} // namespace tlfleet::network
