#pragma once

#include "tlfleet/network/road_network.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tlfleet::network {

struct GridSpec {
  std::size_t rows = 4;
  std::size_t cols = 4;
  Seconds weight_min = 1;
  Seconds weight_max = 1;
  std::uint64_t seed = 1;
};

/// Bidirectional rows x cols grid. Node (r, c) has id `n<r>_<c>` and labels
/// {`n<r>_<c>`, `row<r>`, `col<c>`}. Each undirected road draws one weight
/// uniformly from [weight_min, weight_max] and uses it in both directions.
/// Arrival probabilities start uniform.
RoadNetwork make_grid(const GridSpec &spec);

enum class ProbabilityKind { Uniform, Center, Corner, TwoPeaks };

std::string_view probability_kind_name(ProbabilityKind kind);
ProbabilityKind probability_kind_from_name(std::string_view name);

/// Request arrival probabilities over all nodes, summing to 1.
///
/// Each peak receives `peak_mass` (capped so that all peaks together take at
/// most 1), spread over the nodes within `spread` hops with weight 2^-hops.
/// Whatever mass is left is split evenly across every node.
///   center    one peak at the node with the smallest hop eccentricity
///   corner    one peak at the node with the largest hop eccentricity
///   two_peaks two peaks at the pair of nodes furthest apart in hops
/// Ties go to the lowest node index.
std::vector<double> make_probability_map(const RoadNetwork &net, ProbabilityKind kind,
                                         double peak_mass, std::size_t spread);

} // namespace tlfleet::network
