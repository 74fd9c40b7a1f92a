#pragma once

#include <cstdint>

#include "gapa/graph.hpp"

namespace gapa {

// Deterministic synthetic graphs for tests and benchmarks.

// Each of the n(n-1)/2 pairs becomes an edge independently with probability p.
Graph erdos_renyi(int n, double p, std::uint64_t seed);

// Preferential attachment; every new node attaches to `attach` distinct
// existing nodes. attach=1 grows a random tree (n nodes, n-1 edges).
Graph barabasi_albert(int n, int attach, std::uint64_t seed);

// `blocks` groups of `block_size` nodes; intra-block pairs with p_in,
// inter-block pairs with p_out. Strong community structure for p_in >> p_out.
Graph planted_partition(int blocks, int block_size, double p_in, double p_out, std::uint64_t seed);

}  // namespace gapa
