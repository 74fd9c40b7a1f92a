#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "gapa/components.hpp"
#include "gapa/error.hpp"
#include "gapa/gene_pool.hpp"
#include "gapa/generators.hpp"
#include "gapa/graph.hpp"
#include "support/oracles.hpp"

using namespace gapa;

namespace {

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, std::move(edges));
}

Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

Graph star_graph(int leaves) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return Graph(leaves + 1, std::move(edges));
}

}  // namespace

TEST_CASE("load_edge_list parses a small path") {
    const auto result = load_edge_list("0 1\n1 2");
    CHECK(result.graph.node_count() == 3);
    CHECK(result.graph.edge_count() == 2);
    CHECK(result.self_loops_dropped == 0);
    CHECK(result.duplicates_dropped == 0);
}

TEST_CASE("load_edge_list drops duplicates and self-loops with counts") {
    const auto result = load_edge_list("a b\nb a\nb b");
    CHECK(result.graph.node_count() == 2);
    CHECK(result.graph.edge_count() == 1);
    CHECK(result.duplicates_dropped == 1);
    CHECK(result.self_loops_dropped == 1);
}

TEST_CASE("load_edge_list keeps first-appearance label order") {
    const auto result = load_edge_list("x y\nz x");
    CHECK(result.graph.label(0) == "x");
    CHECK(result.graph.label(1) == "y");
    CHECK(result.graph.label(2) == "z");
    CHECK(result.graph.id_of("z") == 2);
}

TEST_CASE("load_edge_list skips comments and blank lines") {
    const auto result = load_edge_list("# header\n% other comment\n\n0 1\n");
    CHECK(result.graph.node_count() == 2);
    CHECK(result.graph.edge_count() == 1);
}

TEST_CASE("load_edge_list rejects malformed lines with the line number") {
    CHECK_THROWS_WITH_AS(load_edge_list("0 1\n0 1 2"), doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_AS(load_edge_list("justone"), ParseError);
}

TEST_CASE("karate dataset loads with the published size") {
    const auto result = load_edge_list_file(std::string(GAPA_SOURCE_DIR) + "/data/karate.txt");
    CHECK(result.graph.node_count() == 34);
    CHECK(result.graph.edge_count() == 78);
    // intact graph is one component: PC = 34*33/2
    const auto parts = connected_components(result.graph.adjacency());
    CHECK(parts.size() == 1);
    CHECK(pairwise_connectivity(parts) == 561);
}

TEST_CASE("missing dataset file raises DatasetError") {
    CHECK_THROWS_AS(load_edge_list_file("/nonexistent/file.txt"), DatasetError);
}

TEST_CASE("gene pool kinds and ordering") {
    SUBCASE("node pool over an 8-node graph has 8 genes") {
        const Graph g = path_graph(8);
        const GenePool pool = build_gene_pool(g, PoolKind::NodeRemoval);
        CHECK(pool.size() == 8);
        for (int i = 0; i < 8; ++i) CHECK(pool.gene(i).u == i);
    }
    SUBCASE("edge-removal pool of P3 has 2 genes, sorted") {
        const GenePool pool = build_gene_pool(path_graph(3), PoolKind::EdgeRemoval);
        CHECK(pool.size() == 2);
        CHECK(pool.gene(0).u == 0);
        CHECK(pool.gene(0).v == 1);
        CHECK(pool.gene(1).u == 1);
        CHECK(pool.gene(1).v == 2);
    }
    SUBCASE("edge-addition on a complete graph is an error") {
        CHECK_THROWS_AS(build_gene_pool(complete_graph(3), PoolKind::EdgeAddition), Error);
    }
    SUBCASE("edge-addition enumerates complement pairs lexicographically") {
        const GenePool pool = build_gene_pool(path_graph(4), PoolKind::EdgeAddition);
        CHECK(pool.size() == 3);  // (0,2), (0,3), (1,3)
        CHECK(pool.gene(0).u == 0);
        CHECK(pool.gene(0).v == 2);
        CHECK(pool.gene(1).u == 0);
        CHECK(pool.gene(1).v == 3);
        CHECK(pool.gene(2).u == 1);
        CHECK(pool.gene(2).v == 3);
    }
}

TEST_CASE("gene pool reverse lookup is a bijection") {
    std::mt19937 rng(7);
    const Graph g = erdos_renyi(24, 0.2, 99);
    for (PoolKind kind : {PoolKind::EdgeRemoval, PoolKind::EdgeAddition, PoolKind::NodeRemoval}) {
        const GenePool pool = build_gene_pool(g, kind);
        for (int i = 0; i < pool.size(); ++i) CHECK(pool.index_of(pool.gene(i)) == i);
    }
}

TEST_CASE("perturbation budget rounds up over the right basis") {
    const Graph g = path_graph(11);  // n=11, m=10
    CHECK(perturbation_budget(g, PoolKind::NodeRemoval, 0.1) == 2);   // ceil(1.1)
    CHECK(perturbation_budget(g, PoolKind::EdgeRemoval, 0.1) == 1);   // ceil(1.0)
    CHECK(perturbation_budget(g, PoolKind::EdgeAddition, 0.25) == 3); // ceil(2.5)
}

TEST_CASE("apply_perturbation basics") {
    SUBCASE("node removal zeroes row and column") {
        const Graph g = path_graph(3);
        const GenePool pool = build_gene_pool(g, PoolKind::NodeRemoval);
        const std::vector<std::int32_t> genes = {1};
        const BitMatrix out = apply_perturbation(g.adjacency(), pool, genes);
        CHECK(out.row_popcount(1) == 0);
        CHECK_FALSE(out.get(0, 1));
        CHECK_FALSE(out.get(2, 1));
        const auto parts = connected_components(out);
        REQUIRE(parts.size() == 3);  // {0}, {1}, {2}: removed node kept as singleton
        CHECK(largest_component_size(parts) == 1);
    }
    SUBCASE("duplicate gene ids are idempotent") {
        const Graph g = complete_graph(4);
        const GenePool pool = build_gene_pool(g, PoolKind::EdgeRemoval);
        const std::vector<std::int32_t> once = {0};
        const std::vector<std::int32_t> twice = {0, 0};
        CHECK(apply_perturbation(g.adjacency(), pool, once) ==
              apply_perturbation(g.adjacency(), pool, twice));
    }
    SUBCASE("star minus center leaves 5 singletons") {
        const Graph g = star_graph(4);
        const GenePool pool = build_gene_pool(g, PoolKind::NodeRemoval);
        const std::vector<std::int32_t> genes = {0};
        const BitMatrix out = apply_perturbation(g.adjacency(), pool, genes);
        CHECK(out.popcount() == 0);
        // derived via the traversal oracle
        CHECK(oracle::largest_component_by_bfs(out) == 1);
        CHECK(connected_components(out).size() == 5);
    }
    SUBCASE("input adjacency is not modified") {
        const Graph g = path_graph(4);
        const GenePool pool = build_gene_pool(g, PoolKind::EdgeRemoval);
        const BitMatrix a = g.adjacency();
        const BitMatrix copy = a;
        const std::vector<std::int32_t> genes = {0, 1, 2};
        (void)apply_perturbation(a, pool, genes);
        CHECK(a == copy);
    }
    SUBCASE("empty gene vector is the identity") {
        const Graph g = erdos_renyi(12, 0.3, 5);
        const GenePool pool = build_gene_pool(g, PoolKind::EdgeRemoval);
        const BitMatrix a = g.adjacency();
        CHECK(apply_perturbation(a, pool, std::vector<std::int32_t>{}) == a);
    }
}

TEST_CASE("apply_perturbation preserves symmetry and zero diagonal") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 20);
        const Graph g = erdos_renyi(n, 0.3, rng());
        for (PoolKind kind : {PoolKind::EdgeRemoval, PoolKind::EdgeAddition, PoolKind::NodeRemoval}) {
            GenePool pool = [&]() -> GenePool {
                try {
                    return build_gene_pool(g, kind);
                } catch (const Error&) {
                    return build_gene_pool(g, PoolKind::NodeRemoval);
                }
            }();
            if (pool.size() == 0) continue;  // ER draw with no edges
            std::vector<std::int32_t> genes;
            for (int i = 0; i < 5; ++i)
                genes.push_back(static_cast<std::int32_t>(rng() % pool.size()));
            const BitMatrix out = apply_perturbation(g.adjacency(), pool, genes);
            CHECK(out.is_symmetric());
            CHECK(out.diagonal_is_zero());
        }
    }
}

TEST_CASE("connected_components on fixed shapes") {
    SUBCASE("two disjoint edges") {
        const Graph g(4, {{0, 1}, {2, 3}});
        const auto parts = connected_components(g.adjacency());
        REQUIRE(parts.size() == 2);
        CHECK(parts[0] == std::vector<int>{0, 1});
        CHECK(parts[1] == std::vector<int>{2, 3});
    }
    SUBCASE("complete graph is one component") {
        const auto parts = connected_components(complete_graph(4).adjacency());
        REQUIRE(parts.size() == 1);
        CHECK(parts[0].size() == 4);
    }
    SUBCASE("removed nodes: singleton by default, absent when excluded") {
        const Graph g = path_graph(3);
        const GenePool pool = build_gene_pool(g, PoolKind::NodeRemoval);
        const std::vector<std::int32_t> genes = {1};
        const BitMatrix out = apply_perturbation(g.adjacency(), pool, genes);
        const auto kept = connected_components(out);
        const std::vector<int> removed = {1};
        const auto excluded = connected_components(out, removed);
        CHECK(kept.size() == 3);
        REQUIRE(excluded.size() == 2);
        CHECK(excluded[0] == std::vector<int>{0});
        CHECK(excluded[1] == std::vector<int>{2});
    }
}

TEST_CASE("pairwise_connectivity and largest_component_size formulas") {
    const Partition p = {{0, 1, 2}, {3, 4}};
    CHECK(pairwise_connectivity(p) == 4);  // 3 + 1
    CHECK(largest_component_size(p) == 3);
    CHECK(pairwise_connectivity({{0}, {1}, {2}}) == 0);
    CHECK(largest_component_size({{0, 1}, {2, 3, 4}}) == 3);
    CHECK(largest_component_size(connected_components(complete_graph(4).adjacency())) == 4);
}

TEST_CASE("component metrics agree with exhaustive path checking on random graphs") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 61);
        gapa::BitMatrix a = oracle::random_adjacency(n, 0.08, rng);
        // random node knockouts to exercise isolated rows
        for (int i = 0; i < 3; ++i) {
            const int victim = static_cast<int>(rng() % n);
            a.zero_row(victim);
            a.zero_column(victim);
        }
        const auto parts = connected_components(a);
        const auto closure = oracle::reachability_by_floyd_warshall(a);
        CHECK(pairwise_connectivity(parts) == oracle::pairwise_connectivity_by_bfs(a));
        CHECK(largest_component_size(parts) == oracle::largest_component_by_bfs(a));
        // partition must be consistent with pairwise path existence
        std::vector<int> comp_of(n, -1);
        for (std::size_t c = 0; c < parts.size(); ++c)
            for (int u : parts[c]) comp_of[u] = static_cast<int>(c);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                CHECK((comp_of[u] == comp_of[v]) == closure.get(u, v));
    }
}

TEST_CASE("generators produce the advertised shapes") {
    const Graph ba = barabasi_albert(500, 1, 42);
    CHECK(ba.node_count() == 500);
    CHECK(ba.edge_count() == 499);
    CHECK(connected_components(ba.adjacency()).size() == 1);

    const Graph er = erdos_renyi(100, 0.05, 1);
    CHECK(er.node_count() == 100);
    CHECK(er.edge_count() > 0);

    const Graph pp = planted_partition(4, 8, 0.9, 0.02, 3);
    CHECK(pp.node_count() == 32);
}
