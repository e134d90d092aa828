#include "tlfleet/network/generators.hpp"

#include "tlfleet/network/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace tlfleet::network {

RoadNetwork make_grid(const GridSpec &spec) {
  if (spec.rows == 0 || spec.cols == 0)
    throw std::invalid_argument("grid needs at least one row and one column");
  if (spec.weight_min < 1 || spec.weight_max < spec.weight_min)
    throw std::invalid_argument("grid weights must satisfy 1 <= min <= max");

  auto node_id = [](std::size_t r, std::size_t c) {
    return "n" + std::to_string(r) + "_" + std::to_string(c);
  };

  std::vector<std::string> alphabet;
  std::vector<NodeSpec> nodes;
  for (std::size_t r = 0; r < spec.rows; ++r)
    alphabet.push_back("row" + std::to_string(r));
  for (std::size_t c = 0; c < spec.cols; ++c)
    alphabet.push_back("col" + std::to_string(c));
  for (std::size_t r = 0; r < spec.rows; ++r) {
    for (std::size_t c = 0; c < spec.cols; ++c) {
      alphabet.push_back(node_id(r, c));
      nodes.push_back({node_id(r, c),
                       {node_id(r, c), "row" + std::to_string(r), "col" + std::to_string(c)},
                       std::nullopt,
                       std::nullopt});
    }
  }

  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<Seconds> weight(spec.weight_min, spec.weight_max);
  std::vector<EdgeSpec> edges;
  auto road = [&](const std::string &a, const std::string &b) {
    const Seconds w = weight(rng);
    edges.push_back({a, b, w});
    edges.push_back({b, a, w});
  };
  for (std::size_t r = 0; r < spec.rows; ++r) {
    for (std::size_t c = 0; c < spec.cols; ++c) {
      if (c + 1 < spec.cols)
        road(node_id(r, c), node_id(r, c + 1));
      if (r + 1 < spec.rows)
        road(node_id(r, c), node_id(r + 1, c));
    }
  }
  return RoadNetwork(std::move(alphabet), std::move(nodes), std::move(edges));
}

std::string_view probability_kind_name(ProbabilityKind kind) {
  switch (kind) {
  case ProbabilityKind::Uniform:
    return "uniform";
  case ProbabilityKind::Center:
    return "center";
  case ProbabilityKind::Corner:
    return "corner";
  case ProbabilityKind::TwoPeaks:
    return "two_peaks";
  }
  return "?";
}

ProbabilityKind probability_kind_from_name(std::string_view name) {
  for (auto k : {ProbabilityKind::Uniform, ProbabilityKind::Center, ProbabilityKind::Corner,
                 ProbabilityKind::TwoPeaks})
    if (probability_kind_name(k) == name)
      return k;
  throw std::invalid_argument("unknown probability map kind '" + std::string(name) + "'");
}

namespace {

constexpr std::size_t far = std::numeric_limits<std::size_t>::max();

std::vector<std::vector<std::size_t>> all_hops(const RoadNetwork &net) {
  std::vector<std::vector<std::size_t>> out(net.size(), std::vector<std::size_t>(net.size(), far));
  for (NodeIndex a = 0; a < net.size(); ++a) {
    const auto hops = hop_distances(net, a);
    for (NodeIndex b = 0; b < net.size(); ++b)
      if (hops[b])
        out[a][b] = *hops[b];
  }
  return out;
}

std::size_t eccentricity(const std::vector<std::size_t> &row) {
  return *std::max_element(row.begin(), row.end());
}

} // namespace

std::vector<double> make_probability_map(const RoadNetwork &net, ProbabilityKind kind,
                                         double peak_mass, std::size_t spread) {
  const std::size_t n = net.size();
  if (n == 0)
    return {};
  if (!(peak_mass > 0.0 && peak_mass <= 1.0))
    throw std::invalid_argument("peak_mass must lie in (0, 1]");
  if (spread < 1)
    throw std::invalid_argument("spread must be at least 1");

  std::vector<double> probs(n, 0.0);
  if (kind == ProbabilityKind::Uniform) {
    std::fill(probs.begin(), probs.end(), 1.0 / static_cast<double>(n));
    return probs;
  }

  const auto hops = all_hops(net);
  std::vector<NodeIndex> peaks;
  if (kind == ProbabilityKind::Center || kind == ProbabilityKind::Corner) {
    NodeIndex best = 0;
    for (NodeIndex a = 1; a < n; ++a) {
      const std::size_t e = eccentricity(hops[a]);
      const std::size_t b = eccentricity(hops[best]);
      if (kind == ProbabilityKind::Center ? e < b : (e > b && e != far))
        best = a;
    }
    peaks.push_back(best);
  } else {
    NodeIndex pa = 0, pb = 0;
    std::size_t best = 0;
    for (NodeIndex a = 0; a < n; ++a)
      for (NodeIndex b = a + 1; b < n; ++b)
        if (hops[a][b] != far && hops[a][b] > best) {
          best = hops[a][b];
          pa = a;
          pb = b;
        }
    peaks = {pa, pb};
  }

  const double per_peak = std::min(peak_mass, 1.0 / static_cast<double>(peaks.size()));
  for (NodeIndex peak : peaks) {
    double total_weight = 0.0;
    for (NodeIndex m = 0; m < n; ++m)
      if (hops[peak][m] <= spread)
        total_weight += std::ldexp(1.0, -static_cast<int>(hops[peak][m]));
    for (NodeIndex m = 0; m < n; ++m)
      if (hops[peak][m] <= spread)
        probs[m] += per_peak * std::ldexp(1.0, -static_cast<int>(hops[peak][m])) / total_weight;
  }
  const double rest = 1.0 - per_peak * static_cast<double>(peaks.size());
  for (auto &p : probs)
    p += rest / static_cast<double>(n);
  return probs;
}

} // namespace tlfleet::network
