#include "gapa/generators.hpp"

#include <utility>
#include <vector>

#include "gapa/error.hpp"
#include "gapa/rng.hpp"

namespace gapa {

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
    if (n < 0 || p < 0.0 || p > 1.0) throw Error("erdos_renyi: invalid parameters");
    RngStream rng(mix64(seed ^ 0x45524e4f53ull));
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_bernoulli(p)) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

Graph barabasi_albert(int n, int attach, std::uint64_t seed) {
    if (n < 1 || attach < 1) throw Error("barabasi_albert: invalid parameters");
    RngStream rng(mix64(seed ^ 0x42415241ull));
    std::vector<std::pair<int, int>> edges;
    // Endpoint pool: each node appears once per incident edge, which makes
    // uniform pool sampling proportional to degree.
    std::vector<int> pool;
    pool.push_back(0);
    for (int v = 1; v < n; ++v) {
        const int want = std::min(attach, v);
        std::vector<int> chosen;
        while (static_cast<int>(chosen.size()) < want) {
            int target = pool[rng.next_index(static_cast<std::uint32_t>(pool.size()))];
            bool dup = false;
            for (int c : chosen) dup |= (c == target);
            if (!dup) chosen.push_back(target);
        }
        for (int target : chosen) {
            edges.emplace_back(target, v);
            pool.push_back(target);
            pool.push_back(v);
        }
    }
    return Graph(n, std::move(edges));
}

Graph planted_partition(int blocks, int block_size, double p_in, double p_out, std::uint64_t seed) {
    if (blocks < 1 || block_size < 1) throw Error("planted_partition: invalid parameters");
    RngStream rng(mix64(seed ^ 0x50504d4full));
    const int n = blocks * block_size;
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            const double p = (u / block_size == v / block_size) ? p_in : p_out;
            if (rng.next_bernoulli(p)) edges.emplace_back(u, v);
        }
    return Graph(n, std::move(edges));
}

}  // namespace gapa
