#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gapa/bit_matrix.hpp"

namespace gapa {

// Connected components as lists of node ids. Components are ordered by
// their smallest member and each component lists nodes ascending.
using Partition = std::vector<std::vector<int>>;

// Partition of all nodes; removed nodes (zeroed rows) appear as singleton
// components, which is what every metric in this project counts.
Partition connected_components(const BitMatrix& adjacency);

// Partition of the nodes outside `excluded_nodes`, for callers that want
// removed nodes reported as absent instead of as singletons.
Partition connected_components(const BitMatrix& adjacency, std::span<const int> excluded_nodes);

// Sum over components of |C| choose 2.
std::int64_t pairwise_connectivity(const Partition& partition);

// Size of the largest component; 0 for an empty partition.
int largest_component_size(const Partition& partition);

}  // namespace gapa
