#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gapa/bit_matrix.hpp"
#include "gapa/graph.hpp"

namespace gapa {

enum class PoolKind { EdgeRemoval, EdgeAddition, NodeRemoval };

std::string to_string(PoolKind kind);
PoolKind pool_kind_from_string(const std::string& name);

// One candidate perturbation element. Edges carry (u, v) with u < v;
// node elements carry the node in `u` and v == -1.
struct GeneElement {
    int u = -1;
    int v = -1;
    bool is_node() const { return v < 0; }
};

// Indexed universe of perturbation elements; a chromosome is a vector of
// indices into this pool. Gene ordering is deterministic: edges sorted by
// (min, max), nodes by id, complement pairs lexicographic.
// Immutable after construction and safe to share across workers.
class GenePool {
public:
    GenePool(PoolKind kind, std::vector<GeneElement> genes);

    PoolKind kind() const { return kind_; }
    int size() const { return static_cast<int>(genes_.size()); }
    const GeneElement& gene(int id) const { return genes_[id]; }
    const std::vector<GeneElement>& genes() const { return genes_; }

    // Index of the element, or -1 if it is not in the pool.
    int index_of(const GeneElement& element) const;

    // Applies a decoded individual to an adjacency matrix in place.
    // Duplicate gene ids and already-absent/present edges are no-ops,
    // so the effective budget may be smaller than the gene count.
    void apply_in_place(BitMatrix& adjacency, std::span<const std::int32_t> gene_ids) const;

private:
    PoolKind kind_;
    std::vector<GeneElement> genes_;
    std::unordered_map<std::uint64_t, int> reverse_;
};

// Builds the pool for a graph. Throws Error for an empty graph or when
// edge-addition is requested on a complete graph (empty pool).
GenePool build_gene_pool(const Graph& g, PoolKind kind);

// Budget k = ceil(rate * m) for edge kinds, ceil(rate * n) for node kind.
int perturbation_budget(const Graph& g, PoolKind kind, double rate);

// One GA individual decoded against a pool.
struct Perturbation {
    const GenePool* pool = nullptr;
    std::vector<std::int32_t> gene_ids;

    void validate() const;  // throws Error on out-of-range ids
};

// Pure copy-on-write form: the input adjacency is never modified.
BitMatrix apply_perturbation(const BitMatrix& adjacency, const Perturbation& p);
BitMatrix apply_perturbation(const BitMatrix& adjacency, const GenePool& pool,
                             std::span<const std::int32_t> gene_ids);

}  // namespace gapa
