#pragma once

#include <vector>

#include "gapa/bit_matrix.hpp"

namespace gapa {

// Node -> community id, ids dense in [0, count).
struct CommunityPartition {
    std::vector<int> assignment;

    int node_count() const { return static_cast<int>(assignment.size()); }
    int community_count() const;
    // Renumbers communities by order of their smallest member.
    CommunityPartition normalized() const;
};

// Greedy modularity agglomeration: start from singletons and repeatedly
// apply the merge with the largest positive modularity gain, ties broken
// by the smallest (id, id) pair. Deterministic.
CommunityPartition detect_communities(const BitMatrix& adjacency);

// Newman modularity Q = sum_c (intra-edge fraction - (degree fraction)^2).
// Throws Error when the graph has no edges.
double modularity(const BitMatrix& adjacency, const CommunityPartition& partition);

// Normalized mutual information with arithmetic-mean normalization.
// Relabel-invariant, symmetric, in [0, 1]. When both partitions are a
// single community (zero entropy on both sides) it is 1 if they are
// identical and 0 otherwise.
double nmi(const CommunityPartition& a, const CommunityPartition& b);

}  // namespace gapa
