#include "tlfleet/network/road_network.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace tlfleet::network {

namespace {

void check_probability(double p, const std::string &where) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0)
    throw NetworkError(NetworkError::Kind::ProbabilityOutOfRange,
                       "arrival probability " + std::to_string(p) + " of " + where +
                           " is outside [0,1]");
}

} // namespace

RoadNetwork::RoadNetwork(std::vector<std::string> alphabet, std::vector<NodeSpec> nodes,
                         std::vector<EdgeSpec> edges)
    : alphabet_(std::move(alphabet)) {
  std::sort(alphabet_.begin(), alphabet_.end());
  if (std::adjacent_find(alphabet_.begin(), alphabet_.end()) != alphabet_.end())
    throw NetworkError(NetworkError::Kind::Schema, "duplicate proposition in alphabet");
  for (const auto &p : alphabet_)
    if (p.empty() || std::any_of(p.begin(), p.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
      throw NetworkError(NetworkError::Kind::Schema, "invalid proposition name '" + p + "'");

  const bool any_prob = std::any_of(nodes.begin(), nodes.end(),
                                    [](const NodeSpec &n) { return n.arrival_prob.has_value(); });
  for (auto &spec : nodes) {
    if (spec.id.empty())
      throw NetworkError(NetworkError::Kind::Schema, "node with empty id");
    const auto n = static_cast<NodeIndex>(ids_.size());
    if (!index_.emplace(spec.id, n).second)
      throw NetworkError(NetworkError::Kind::DuplicateNode, "duplicate node id '" + spec.id + "'");
    std::sort(spec.labels.begin(), spec.labels.end());
    spec.labels.erase(std::unique(spec.labels.begin(), spec.labels.end()), spec.labels.end());
    for (const auto &p : spec.labels)
      if (!std::binary_search(alphabet_.begin(), alphabet_.end(), p))
        throw NetworkError(NetworkError::Kind::UnknownProposition,
                           "node '" + spec.id + "' uses proposition '" + p +
                               "' outside the alphabet");
    double prob = 0.0;
    if (spec.arrival_prob) {
      check_probability(*spec.arrival_prob, "node '" + spec.id + "'");
      prob = *spec.arrival_prob;
    } else if (!any_prob) {
      prob = 1.0 / static_cast<double>(nodes.size());
    }
    if (spec.avg_request_utility &&
        (!std::isfinite(*spec.avg_request_utility) || *spec.avg_request_utility < 0.0))
      throw NetworkError(NetworkError::Kind::Schema,
                         "negative average request utility at node '" + spec.id + "'");
    ids_.push_back(spec.id);
    labels_.push_back(std::move(spec.labels));
    arrival_prob_.push_back(prob);
    avg_utility_.push_back(spec.avg_request_utility);
  }

  out_.resize(ids_.size());
  std::set<std::pair<NodeIndex, NodeIndex>> seen;
  for (const auto &e : edges) {
    auto from = find(e.from);
    auto to = find(e.to);
    if (!from || !to)
      throw NetworkError(NetworkError::Kind::DanglingEndpoint,
                         "edge " + e.from + " -> " + e.to + " references an undeclared node");
    if (e.weight < 1)
      throw NetworkError(NetworkError::Kind::NonpositiveWeight,
                         "edge " + e.from + " -> " + e.to + " has nonpositive weight " +
                             std::to_string(e.weight));
    if (!seen.emplace(*from, *to).second)
      throw NetworkError(NetworkError::Kind::Schema,
                         "duplicate edge " + e.from + " -> " + e.to);
    out_[*from].push_back({*to, e.weight});
    ++edge_count_;
  }
  for (auto &adj : out_)
    std::sort(adj.begin(), adj.end(), [](const Edge &a, const Edge &b) { return a.to < b.to; });
}

std::optional<NodeIndex> RoadNetwork::find(const std::string &id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

NodeIndex RoadNetwork::index_of(const std::string &id) const {
  auto n = find(id);
  if (!n)
    throw NetworkError(NetworkError::Kind::DanglingEndpoint, "unknown node '" + id + "'");
  return *n;
}

std::vector<NodeIndex> RoadNetwork::nodes_with_label(const std::string &prop) const {
  std::vector<NodeIndex> out;
  for (NodeIndex n = 0; n < size(); ++n)
    if (std::binary_search(labels_[n].begin(), labels_[n].end(), prop))
      out.push_back(n);
  return out;
}

std::optional<Seconds> RoadNetwork::edge_weight(NodeIndex from, NodeIndex to) const {
  for (const auto &e : out_.at(from))
    if (e.to == to)
      return e.weight;
  return std::nullopt;
}

RoadNetwork RoadNetwork::with_arrival_probs(std::vector<double> probs) const {
  if (probs.size() != size())
    throw NetworkError(NetworkError::Kind::Schema, "probability vector has wrong length");
  for (NodeIndex n = 0; n < size(); ++n)
    check_probability(probs[n], "node '" + ids_[n] + "'");
  RoadNetwork copy = *this;
  copy.arrival_prob_ = std::move(probs);
  return copy;
}

RoadNetwork RoadNetwork::with_avg_request_utilities(std::vector<double> utilities) const {
  if (utilities.size() != size())
    throw NetworkError(NetworkError::Kind::Schema, "utility vector has wrong length");
  RoadNetwork copy = *this;
  for (NodeIndex n = 0; n < size(); ++n) {
    if (!std::isfinite(utilities[n]) || utilities[n] < 0.0)
      throw NetworkError(NetworkError::Kind::Schema, "negative average request utility");
    copy.avg_utility_[n] = utilities[n];
  }
  return copy;
}

std::vector<NodeSpec> RoadNetwork::node_specs() const {
  std::vector<NodeSpec> out;
  out.reserve(size());
  for (NodeIndex n = 0; n < size(); ++n)
    out.push_back({ids_[n], labels_[n], arrival_prob_[n], avg_utility_[n]});
  return out;
}

std::vector<EdgeSpec> RoadNetwork::edge_specs() const {
  std::vector<EdgeSpec> out;
  out.reserve(edge_count_);
  for (NodeIndex n = 0; n < size(); ++n)
    for (const auto &e : out_[n])
      out.push_back({ids_[n], ids_[e.to], e.weight});
  return out;
}

} // namespace tlfleet::network
