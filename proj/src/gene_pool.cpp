#include "gapa/gene_pool.hpp"

#include <algorithm>
#include <cmath>

#include "gapa/error.hpp"

namespace gapa {

std::string to_string(PoolKind kind) {
    switch (kind) {
        case PoolKind::EdgeRemoval: return "edge-removal";
        case PoolKind::EdgeAddition: return "edge-addition";
        case PoolKind::NodeRemoval: return "node-removal";
    }
    return "?";
}

PoolKind pool_kind_from_string(const std::string& name) {
    if (name == "edge-removal") return PoolKind::EdgeRemoval;
    if (name == "edge-addition") return PoolKind::EdgeAddition;
    if (name == "node-removal") return PoolKind::NodeRemoval;
    throw ConfigError("unknown pool kind: " + name);
}

namespace {

std::uint64_t element_key(const GeneElement& e) {
    if (e.is_node()) return static_cast<std::uint64_t>(e.u);
    return edge_key(e.u, e.v);
}

}  // namespace

GenePool::GenePool(PoolKind kind, std::vector<GeneElement> genes)
    : kind_(kind), genes_(std::move(genes)) {
    reverse_.reserve(genes_.size());
    for (int i = 0; i < static_cast<int>(genes_.size()); ++i) {
        auto [it, inserted] = reverse_.emplace(element_key(genes_[i]), i);
        if (!inserted) throw Error("gene pool: duplicate element");
    }
}

int GenePool::index_of(const GeneElement& element) const {
    auto it = reverse_.find(element_key(element));
    return it == reverse_.end() ? -1 : it->second;
}

void GenePool::apply_in_place(BitMatrix& adjacency, std::span<const std::int32_t> gene_ids) const {
    for (std::int32_t id : gene_ids) {
        const GeneElement& e = genes_[id];
        switch (kind_) {
            case PoolKind::EdgeRemoval:
                adjacency.clear(e.u, e.v);
                adjacency.clear(e.v, e.u);
                break;
            case PoolKind::EdgeAddition:
                adjacency.set(e.u, e.v);
                adjacency.set(e.v, e.u);
                break;
            case PoolKind::NodeRemoval:
                adjacency.zero_row(e.u);
                adjacency.zero_column(e.u);
                break;
        }
    }
}

GenePool build_gene_pool(const Graph& g, PoolKind kind) {
    if (g.node_count() == 0) throw Error("gene pool: graph is empty");
    std::vector<GeneElement> genes;
    switch (kind) {
        case PoolKind::EdgeRemoval: {
            genes.reserve(g.edge_count());
            for (auto [u, v] : g.edges()) genes.push_back({u, v});
            std::sort(genes.begin(), genes.end(), [](const GeneElement& a, const GeneElement& b) {
                return std::pair(a.u, a.v) < std::pair(b.u, b.v);
            });
            break;
        }
        case PoolKind::EdgeAddition: {
            const int n = g.node_count();
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (!g.has_edge(u, v)) genes.push_back({u, v});
            if (genes.empty()) throw Error("gene pool: graph is complete, no edges can be added");
            break;
        }
        case PoolKind::NodeRemoval: {
            genes.reserve(g.node_count());
            for (int u = 0; u < g.node_count(); ++u) genes.push_back({u, -1});
            break;
        }
    }
    return GenePool(kind, std::move(genes));
}

int perturbation_budget(const Graph& g, PoolKind kind, double rate) {
    if (rate <= 0.0 || rate > 1.0) throw ConfigError("perturbation rate must be in (0, 1]");
    const int basis = (kind == PoolKind::NodeRemoval) ? g.node_count() : g.edge_count();
    return std::max(1, static_cast<int>(std::ceil(rate * basis)));
}

void Perturbation::validate() const {
    if (!pool) throw Error("perturbation: no pool");
    for (std::int32_t id : gene_ids)
        if (id < 0 || id >= pool->size()) throw Error("perturbation: gene id out of range");
}

BitMatrix apply_perturbation(const BitMatrix& adjacency, const GenePool& pool,
                             std::span<const std::int32_t> gene_ids) {
    BitMatrix out = adjacency;
    pool.apply_in_place(out, gene_ids);
    return out;
}

BitMatrix apply_perturbation(const BitMatrix& adjacency, const Perturbation& p) {
    p.validate();
    return apply_perturbation(adjacency, *p.pool, p.gene_ids);
}

}  // namespace gapa
