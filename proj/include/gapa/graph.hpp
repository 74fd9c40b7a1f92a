#pragma once

#include <istream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gapa/bit_matrix.hpp"

namespace gapa {

// Undirected, unweighted graph with dense node ids. Immutable once built;
// safe to share across worker threads.
class Graph {
public:
    Graph() = default;
    // Nodes 0..n-1, edges as unordered pairs. Self-loops and duplicates
    // are rejected here; the edge-list loader filters them beforehand.
    Graph(int n, std::vector<std::pair<int, int>> edges, std::vector<std::string> labels = {});

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    // Canonical (u < v) pairs in insertion order.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool has_edge(int u, int v) const;

    const std::string& label(int id) const { return labels_[id]; }
    const std::vector<std::string>& labels() const { return labels_; }
    // Dense id for an original label, or -1.
    int id_of(const std::string& label) const;

    // Dense symmetric adjacency with zero diagonal.
    BitMatrix adjacency() const;

    std::vector<int> degrees() const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> label_to_id_;
    std::unordered_map<std::uint64_t, int> edge_index_;
};

struct LoadResult {
    Graph graph;
    int self_loops_dropped = 0;
    int duplicates_dropped = 0;
};

// Parses "u v" per line; '#'/'%' lines and blank lines are skipped.
// Labels are arbitrary strings remapped to dense ids in first-appearance
// order, so identical files always produce identical graphs.
// Throws ParseError with the line number on a line that is not 2 tokens.
LoadResult load_edge_list(std::istream& in);
LoadResult load_edge_list(const std::string& text);
// Throws DatasetError if the file cannot be opened.
LoadResult load_edge_list_file(const std::string& path);

// Ground-truth community file: "label community_id" per node.
// Returns a dense community assignment indexed by graph node id.
// Throws DatasetError on unknown labels or nodes missing an assignment.
std::vector<int> load_community_file(const std::string& path, const Graph& g);

std::uint64_t edge_key(int u, int v);

}  // namespace gapa
