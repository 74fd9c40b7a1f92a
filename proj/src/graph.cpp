#include "gapa/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "gapa/error.hpp"

namespace gapa {

std::uint64_t edge_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

Graph::Graph(int n, std::vector<std::pair<int, int>> edges, std::vector<std::string> labels)
    : n_(n), labels_(std::move(labels)) {
    if (labels_.empty()) {
        labels_.reserve(n_);
        for (int i = 0; i < n_; ++i) labels_.push_back(std::to_string(i));
    }
    if (static_cast<int>(labels_.size()) != n_) throw Error("graph: label count does not match node count");
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u == v) throw Error("graph: self-loop rejected");
        if (u < 0 || v < 0 || u >= n_ || v >= n_) throw Error("graph: edge endpoint out of range");
        if (u > v) std::swap(u, v);
        const auto key = edge_key(u, v);
        if (edge_index_.count(key)) throw Error("graph: duplicate edge rejected");
        edge_index_.emplace(key, static_cast<int>(edges_.size()));
        edges_.emplace_back(u, v);
    }
    label_to_id_.reserve(labels_.size());
    for (int i = 0; i < n_; ++i) label_to_id_.emplace(labels_[i], i);
}

bool Graph::has_edge(int u, int v) const {
    if (u == v) return false;
    return edge_index_.count(edge_key(u, v)) > 0;
}

int Graph::id_of(const std::string& label) const {
    auto it = label_to_id_.find(label);
    return it == label_to_id_.end() ? -1 : it->second;
}

BitMatrix Graph::adjacency() const {
    BitMatrix a(n_);
    for (auto [u, v] : edges_) {
        a.set(u, v);
        a.set(v, u);
    }
    return a;
}

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(n_, 0);
    for (auto [u, v] : edges_) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

LoadResult load_edge_list(std::istream& in) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> ids;
    std::vector<std::pair<int, int>> edges;
    std::unordered_map<std::uint64_t, bool> seen;
    int self_loops = 0;
    int duplicates = 0;

    auto intern = [&](const std::string& label) {
        auto it = ids.find(label);
        if (it != ids.end()) return it->second;
        const int id = static_cast<int>(labels.size());
        labels.push_back(label);
        ids.emplace(label, id);
        return id;
    };

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#' || line[start] == '%') continue;

        std::istringstream tokens(line);
        std::string a, b, extra;
        if (!(tokens >> a >> b) || (tokens >> extra)) {
            throw ParseError("edge list line " + std::to_string(line_no) + ": expected exactly 2 tokens");
        }
        const int u = intern(a);
        const int v = intern(b);
        if (u == v) {
            ++self_loops;
            continue;
        }
        const auto key = edge_key(u, v);
        if (seen.count(key)) {
            ++duplicates;
            continue;
        }
        seen.emplace(key, true);
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }

    LoadResult result;
    const int n = static_cast<int>(labels.size());
    result.graph = Graph(n, std::move(edges), std::move(labels));
    result.self_loops_dropped = self_loops;
    result.duplicates_dropped = duplicates;
    return result;
}

LoadResult load_edge_list(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in);
}

LoadResult load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DatasetError("cannot open edge list file: " + path);
    return load_edge_list(in);
}

std::vector<int> load_community_file(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) throw DatasetError("cannot open community file: " + path);

    std::vector<int> assignment(g.node_count(), -1);
    std::unordered_map<std::string, int> community_ids;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#' || line[start] == '%') continue;
        std::istringstream tokens(line);
        std::string label, community, extra;
        if (!(tokens >> label >> community) || (tokens >> extra)) {
            throw ParseError("community file line " + std::to_string(line_no) + ": expected exactly 2 tokens");
        }
        const int node = g.id_of(label);
        if (node < 0) throw DatasetError("community file line " + std::to_string(line_no) + ": unknown node label '" + label + "'");
        auto [it, inserted] = community_ids.emplace(community, static_cast<int>(community_ids.size()));
        assignment[node] = it->second;
    }
    for (int i = 0; i < g.node_count(); ++i) {
        if (assignment[i] < 0) throw DatasetError("community file: node '" + g.label(i) + "' has no assignment");
    }
    return assignment;
}

}  // namespace gapa
