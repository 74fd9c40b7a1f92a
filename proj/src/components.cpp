#include "gapa/components.hpp"

#include <algorithm>

namespace gapa {

namespace {

Partition components_impl(const BitMatrix& adjacency, const std::vector<bool>& excluded) {
    const int n = adjacency.size();
    std::vector<bool> visited = excluded;
    std::vector<int> stack;
    Partition components;

    for (int start = 0; start < n; ++start) {
        if (visited[start]) continue;
        visited[start] = true;
        std::vector<int> members = {start};
        stack.push_back(start);
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            adjacency.for_each_in_row(u, [&](int v) {
                if (!visited[v]) {
                    visited[v] = true;
                    members.push_back(v);
                    stack.push_back(v);
                }
            });
        }
        std::sort(members.begin(), members.end());
        components.push_back(std::move(members));
    }
    return components;
}

}  // namespace

Partition connected_components(const BitMatrix& adjacency) {
    return components_impl(adjacency, std::vector<bool>(adjacency.size(), false));
}

Partition connected_components(const BitMatrix& adjacency, std::span<const int> excluded_nodes) {
    std::vector<bool> excluded(adjacency.size(), false);
    for (int u : excluded_nodes) excluded[u] = true;
    return components_impl(adjacency, excluded);
}

std::int64_t pairwise_connectivity(const Partition& partition) {
    std::int64_t total = 0;
    for (const auto& c : partition) {
        const std::int64_t s = static_cast<std::int64_t>(c.size());
        total += s * (s - 1) / 2;
    }
    return total;
}

int largest_component_size(const Partition& partition) {
    int best = 0;
    for (const auto& c : partition) best = std::max(best, static_cast<int>(c.size()));
    return best;
}

}  // namespace gapa
