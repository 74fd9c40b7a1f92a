#include "gapa/community.hpp"

#include <cmath>
#include <map>
#include <unordered_map>

#include "gapa/error.hpp"

namespace gapa {

int CommunityPartition::community_count() const {
    int max_id = -1;
    for (int c : assignment) max_id = std::max(max_id, c);
    return max_id + 1;
}

CommunityPartition CommunityPartition::normalized() const {
    std::unordered_map<int, int> remap;
    CommunityPartition out;
    out.assignment.reserve(assignment.size());
    for (int c : assignment) {
        auto [it, inserted] = remap.emplace(c, static_cast<int>(remap.size()));
        out.assignment.push_back(it->second);
    }
    return out;
}

CommunityPartition detect_communities(const BitMatrix& adjacency) {
    const int n = adjacency.size();
    std::int64_t total_degree = 0;
    std::vector<std::int64_t> degree(n, 0);
    for (int u = 0; u < n; ++u) {
        degree[u] = adjacency.row_popcount(u);
        total_degree += degree[u];
    }
    const double m = static_cast<double>(total_degree) / 2.0;

    // Community state, keyed by the smallest member id. neighbors[c] maps a
    // neighboring community to the number of edges between the two.
    std::map<int, std::int64_t> community_degree;
    std::map<int, std::map<int, std::int64_t>> neighbors;
    std::vector<int> owner(n);
    for (int u = 0; u < n; ++u) {
        owner[u] = u;
        community_degree[u] = degree[u];
    }
    for (int u = 0; u < n; ++u)
        adjacency.for_each_in_row(u, [&](int v) {
            if (u < v) {
                neighbors[u][v] += 1;
                neighbors[v][u] += 1;
            }
        });

    while (m > 0) {
        double best_gain = 0.0;
        int best_a = -1, best_b = -1;
        for (const auto& [a, nbrs] : neighbors) {
            const double da = static_cast<double>(community_degree[a]);
            for (const auto& [b, edges] : nbrs) {
                if (b <= a) continue;
                const double db = static_cast<double>(community_degree[b]);
                const double gain = static_cast<double>(edges) / m - da * db / (2.0 * m * m);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (best_a < 0) break;

        // Merge best_b into best_a (best_a < best_b).
        community_degree[best_a] += community_degree[best_b];
        community_degree.erase(best_b);
        auto moved = std::move(neighbors[best_b]);
        neighbors.erase(best_b);
        for (const auto& [c, edges] : moved) {
            if (c == best_a) continue;
            neighbors[c].erase(best_b);
            neighbors[c][best_a] += edges;
            neighbors[best_a][c] += edges;
        }
        neighbors[best_a].erase(best_b);
        for (int u = 0; u < n; ++u)
            if (owner[u] == best_b) owner[u] = best_a;
    }

    CommunityPartition part{std::move(owner)};
    return part.normalized();
}

double modularity(const BitMatrix& adjacency, const CommunityPartition& partition) {
    const int n = adjacency.size();
    if (partition.node_count() != n) throw Error("modularity: partition size mismatch");
    const double two_m = static_cast<double>(adjacency.popcount());
    if (two_m <= 0) throw Error("modularity: undefined on a graph with no edges");

    const int communities = partition.community_count();
    std::vector<double> intra(communities, 0.0);
    std::vector<double> degree_sum(communities, 0.0);
    for (int u = 0; u < n; ++u) {
        const int cu = partition.assignment[u];
        degree_sum[cu] += adjacency.row_popcount(u);
        adjacency.for_each_in_row(u, [&](int v) {
            if (u < v && partition.assignment[v] == cu) intra[cu] += 1.0;
        });
    }

    double q = 0.0;
    for (int c = 0; c < communities; ++c) {
        const double e = intra[c] / (two_m / 2.0);
        const double a = degree_sum[c] / two_m;
        q += e - a * a;
    }
    return q;
}

double nmi(const CommunityPartition& a, const CommunityPartition& b) {
    const int n = a.node_count();
    if (b.node_count() != n) throw Error("nmi: partitions cover different node sets");
    if (n == 0) throw Error("nmi: empty partitions");

    const CommunityPartition pa = a.normalized();
    const CommunityPartition pb = b.normalized();
    const int ca = pa.community_count();
    const int cb = pb.community_count();

    std::vector<double> count_a(ca, 0.0), count_b(cb, 0.0);
    std::map<std::pair<int, int>, double> joint;
    for (int u = 0; u < n; ++u) {
        count_a[pa.assignment[u]] += 1.0;
        count_b[pb.assignment[u]] += 1.0;
        joint[{pa.assignment[u], pb.assignment[u]}] += 1.0;
    }

    const double dn = static_cast<double>(n);
    double h_a = 0.0, h_b = 0.0, mutual = 0.0;
    for (double c : count_a)
        if (c > 0) h_a -= (c / dn) * std::log(c / dn);
    for (double c : count_b)
        if (c > 0) h_b -= (c / dn) * std::log(c / dn);
    for (const auto& [cell, nij] : joint)
        mutual += (nij / dn) * std::log(nij * dn / (count_a[cell.first] * count_b[cell.second]));

    if (h_a + h_b == 0.0) return pa.assignment == pb.assignment ? 1.0 : 0.0;
    return 2.0 * mutual / (h_a + h_b);
}

}  // namespace gapa
