#include "tlfleet/network/io.hpp"

#include <fstream>

namespace tlfleet::network {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string &msg) {
  throw NetworkError(NetworkError::Kind::Schema, "map schema: " + msg);
}

const json &field(const json &obj, const char *name) {
  if (!obj.is_object() || !obj.contains(name))
    schema_error(std::string("missing field '") + name + "'");
  return obj.at(name);
}

std::string string_field(const json &obj, const char *name) {
  const json &v = field(obj, name);
  if (!v.is_string())
    schema_error(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

std::optional<double> optional_number(const json &obj, const char *name) {
  if (!obj.contains(name) || obj.at(name).is_null())
    return std::nullopt;
  if (!obj.at(name).is_number())
    schema_error(std::string("field '") + name + "' must be a number");
  return obj.at(name).get<double>();
}

} // namespace

RoadNetwork load_network(const json &doc) {
  if (!doc.is_object())
    schema_error("document must be an object");

  std::vector<std::string> alphabet;
  const json &alpha = field(doc, "alphabet");
  if (!alpha.is_array())
    schema_error("'alphabet' must be an array");
  for (const auto &p : alpha) {
    if (!p.is_string())
      schema_error("alphabet entries must be strings");
    alphabet.push_back(p.get<std::string>());
  }

  std::vector<NodeSpec> nodes;
  const json &jnodes = field(doc, "nodes");
  if (!jnodes.is_array())
    schema_error("'nodes' must be an array");
  for (const auto &jn : jnodes) {
    NodeSpec spec;
    spec.id = string_field(jn, "id");
    if (jn.contains("labels")) {
      if (!jn.at("labels").is_array())
        schema_error("'labels' must be an array");
      for (const auto &l : jn.at("labels")) {
        if (!l.is_string())
          schema_error("labels must be strings");
        spec.labels.push_back(l.get<std::string>());
      }
    }
    spec.arrival_prob = optional_number(jn, "arrival_prob");
    spec.avg_request_utility = optional_number(jn, "avg_request_utility");
    nodes.push_back(std::move(spec));
  }

  std::vector<EdgeSpec> edges;
  const json &jedges = field(doc, "edges");
  if (!jedges.is_array())
    schema_error("'edges' must be an array");
  for (const auto &je : jedges) {
    EdgeSpec spec;
    spec.from = string_field(je, "from");
    spec.to = string_field(je, "to");
    const json &w = field(je, "weight");
    if (!w.is_number_integer())
      schema_error("edge weight must be an integer");
    spec.weight = w.get<Seconds>();
    edges.push_back(std::move(spec));
  }

  return RoadNetwork(std::move(alphabet), std::move(nodes), std::move(edges));
}

RoadNetwork load_network_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw NetworkError(NetworkError::Kind::Schema, "map not found: " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error &e) {
    schema_error(path.string() + ": " + e.what());
  }
  return load_network(doc);
}

json to_json(const RoadNetwork &net) {
  json doc;
  doc["alphabet"] = net.alphabet();
  json nodes = json::array();
  for (const auto &spec : net.node_specs()) {
    json jn{{"id", spec.id}, {"labels", spec.labels}};
    if (spec.arrival_prob)
      jn["arrival_prob"] = *spec.arrival_prob;
    if (spec.avg_request_utility)
      jn["avg_request_utility"] = *spec.avg_request_utility;
    nodes.push_back(std::move(jn));
  }
  doc["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const auto &e : net.edge_specs())
    edges.push_back({{"from", e.from}, {"to", e.to}, {"weight", e.weight}});
  doc["edges"] = std::move(edges);
  return doc;
}

void save_network_file(const RoadNetwork &net, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out << to_json(net).dump(1) << '\n';
}

} // namespace tlfleet::network
