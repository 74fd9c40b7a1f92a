#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gapa/accessibility.hpp"
#include "gapa/community.hpp"
#include "gapa/components.hpp"
#include "gapa/error.hpp"
#include "gapa/fitness.hpp"
#include "gapa/generators.hpp"
#include "gapa/graph.hpp"
#include "gapa/link_prediction.hpp"
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

Graph two_triangles() {
    return Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
}

BitMatrix all_ones(int n) {
    BitMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.set(i, j);
    return m;
}

}  // namespace

TEST_CASE("accessibility matrix on fixed shapes") {
    SUBCASE("P3 becomes all ones; fixpoint detected on the second product") {
        ClosureStats stats;
        const BitMatrix m = accessibility_matrix(path_graph(3).adjacency(), ClosurePolicy::Exact, &stats);
        CHECK(m == all_ones(3));
        CHECK(stats.multiplications == 2);  // diameter 2: one doubling + detection
    }
    SUBCASE("two disjoint edges give a block-diagonal closure") {
        const Graph g(4, {{0, 1}, {2, 3}});
        const BitMatrix m = accessibility_matrix(g.adjacency());
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(m.get(i, j) == (i / 2 == j / 2));
    }
    SUBCASE("complete graph closes after one product") {
        ClosureStats stats;
        const BitMatrix m = accessibility_matrix(complete_graph(5).adjacency(), ClosurePolicy::Exact, &stats);
        CHECK(m == all_ones(5));
        CHECK(stats.multiplications == 1);
    }
    SUBCASE("diagonal is all ones even with no edges") {
        const BitMatrix empty(4);
        const BitMatrix m = accessibility_matrix(empty);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(m.get(i, j) == (i == j));
    }
}

TEST_CASE("accessibility equals BFS reachability on random graphs") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 61);
        std::uniform_real_distribution<double> dens(0.02, 0.5);
        const BitMatrix a = oracle::random_adjacency(n, dens(rng), rng);
        CHECK(accessibility_matrix(a) == oracle::reachability_by_bfs(a));
    }
}

TEST_CASE("multiplication count obeys the squaring bound on paths") {
    for (int n = 2; n <= 64; ++n) {
        ClosureStats stats;
        (void)accessibility_matrix(path_graph(n).adjacency(), ClosurePolicy::Exact, &stats);
        const int diameter = n - 1;
        const int bound = static_cast<int>(std::ceil(std::log2(std::max(diameter, 1)))) + 1;
        CHECK(stats.multiplications <= bound);
    }
}

TEST_CASE("six-degrees shortcut caps the squaring count") {
    ClosureStats stats;
    const BitMatrix m = accessibility_matrix(path_graph(40).adjacency(), ClosurePolicy::SixDegrees, &stats);
    CHECK(stats.multiplications == 3);  // covers distance 8, not the full path
    CHECK_FALSE(m.get(0, 39));
    CHECK(m.get(0, 8));
    // exact on small-diameter graphs
    const BitMatrix k = accessibility_matrix(complete_graph(6).adjacency(), ClosurePolicy::SixDegrees);
    CHECK(k == all_ones(6));
}

TEST_CASE("sixdst fitness fixed cases") {
    SUBCASE("empty perturbation on K4 scores 4") {
        const Graph g = complete_graph(4);
        const GenePool pool = build_gene_pool(g, PoolKind::NodeRemoval);
        PopulationMatrix batch(1, 1);
        batch.at(0, 0) = 0;  // remove node 0 -> MCN 3
        PopulationMatrix none(1, 0);  // empty perturbation
        CHECK(sixdst_fitness(g.adjacency(), none, pool) == FitnessVector{4.0});
        CHECK(sixdst_fitness(g.adjacency(), batch, pool) == FitnessVector{3.0});
    }
    SUBCASE("star minus center scores 1") {
        std::vector<std::pair<int, int>> edges;
        for (int i = 1; i <= 4; ++i) edges.emplace_back(0, i);
        const Graph g(5, std::move(edges));
        const GenePool pool = build_gene_pool(g, PoolKind::NodeRemoval);
        PopulationMatrix batch(1, 1);
        batch.at(0, 0) = 0;
        CHECK(sixdst_fitness(g.adjacency(), batch, pool) == FitnessVector{1.0});
    }
    SUBCASE("pool kind is enforced") {
        const Graph g = complete_graph(4);
        const GenePool pool = build_gene_pool(g, PoolKind::EdgeRemoval);
        PopulationMatrix batch(1, 1);
        CHECK_THROWS_AS(sixdst_fitness(g.adjacency(), batch, pool), Error);
    }
}

TEST_CASE("sixdst and pc fitness match the component oracle on random instances") {
    std::mt19937 rng(202);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 8 + static_cast<int>(rng() % 57);
        std::uniform_real_distribution<double> dens(0.03, 0.3);
        const Graph g = erdos_renyi(n, dens(rng), rng());
        const GenePool pool = build_gene_pool(g, PoolKind::NodeRemoval);
        const int k = 1 + static_cast<int>(rng() % (n / 2));
        PopulationMatrix batch(3, k);
        for (auto& gv : batch.data) gv = static_cast<std::int32_t>(rng() % pool.size());

        const BitMatrix a = g.adjacency();
        const FitnessVector mcn = sixdst_fitness(a, batch, pool);
        const FitnessVector pc = pc_fitness(a, batch, pool);
        for (int i = 0; i < batch.rows; ++i) {
            const BitMatrix perturbed = apply_perturbation(a, pool, batch.row(i));
            CHECK(mcn[i] == static_cast<double>(oracle::largest_component_by_bfs(perturbed)));
            CHECK(pc[i] == static_cast<double>(oracle::pairwise_connectivity_by_bfs(perturbed)));
        }
    }
}

TEST_CASE("pc fitness fixed cases") {
    const Graph g = complete_graph(5);
    const GenePool pool = build_gene_pool(g, PoolKind::NodeRemoval);
    PopulationMatrix none(1, 0);
    CHECK(pc_fitness(g.adjacency(), none, pool) == FitnessVector{10.0});  // 5*4/2
    PopulationMatrix all(1, 5);
    for (int j = 0; j < 5; ++j) all.at(0, j) = j;
    CHECK(pc_fitness(g.adjacency(), all, pool) == FitnessVector{0.0});
}

TEST_CASE("detect_communities fixed cases") {
    SUBCASE("two disjoint triangles match the exhaustive best partition") {
        const BitMatrix a = two_triangles().adjacency();
        const CommunityPartition part = detect_communities(a);
        std::vector<int> best;
        const double best_q = oracle::best_partition_q_exhaustive(a, &best);
        CHECK(modularity(a, part) == doctest::Approx(best_q));
        CHECK(part.community_count() == 2);
        CHECK(part.assignment[0] == part.assignment[1]);
        CHECK(part.assignment[1] == part.assignment[2]);
        CHECK(part.assignment[3] == part.assignment[4]);
        CHECK(part.assignment[4] == part.assignment[5]);
        CHECK(part.assignment[0] != part.assignment[3]);
    }
    SUBCASE("edgeless graph stays all singletons") {
        const BitMatrix a(5);
        const CommunityPartition part = detect_communities(a);
        CHECK(part.community_count() == 5);
    }
    SUBCASE("karate greedy Q within 0.02 of the rescoring greedy") {
        const Graph karate = load_edge_list_file(std::string(GAPA_SOURCE_DIR) + "/data/karate.txt").graph;
        const BitMatrix a = karate.adjacency();
        const double fast_q = modularity(a, detect_communities(a));
        const double naive_q = oracle::greedy_modularity_by_rescoring(a);
        CHECK(std::abs(fast_q - naive_q) <= 0.02);
        CHECK(fast_q > 0.3);  // sanity: karate has clear structure
    }
}

TEST_CASE("modularity fixed values") {
    const BitMatrix a = two_triangles().adjacency();
    SUBCASE("one community scores zero") {
        CommunityPartition one{std::vector<int>(6, 0)};
        CHECK(modularity(a, one) == doctest::Approx(0.0));
    }
    SUBCASE("ground partition of two triangles scores 0.5") {
        CommunityPartition part{{0, 0, 0, 1, 1, 1}};
        CHECK(modularity(a, part) == doctest::Approx(0.5));
    }
    SUBCASE("all singletons score minus the squared degree fractions") {
        CommunityPartition singles{{0, 1, 2, 3, 4, 5}};
        double expected = 0.0;
        for (int u = 0; u < 6; ++u) {
            const double frac = 2.0 / 12.0;  // every node has degree 2, 2m = 12
            expected -= frac * frac;
        }
        CHECK(modularity(a, singles) == doctest::Approx(expected));
    }
    SUBCASE("agrees with the by-definition oracle on random graphs") {
        std::mt19937 rng(42);
        for (int trial = 0; trial < 20; ++trial) {
            const BitMatrix r = oracle::random_adjacency(12, 0.3, rng);
            if (r.popcount() == 0) continue;
            std::vector<int> assignment(12);
            for (auto& c : assignment) c = static_cast<int>(rng() % 3);
            CommunityPartition part{assignment};
            CHECK(modularity(r, part.normalized()) ==
                  doctest::Approx(oracle::modularity_by_definition(r, part.normalized().assignment)));
        }
    }
    SUBCASE("edgeless graph is an error") {
        CommunityPartition part{std::vector<int>(3, 0)};
        CHECK_THROWS_AS(modularity(BitMatrix(3), part), Error);
    }
    SUBCASE("the all-in-one partition scores 0 on any graph with edges") {
        std::mt19937 rng(91);
        for (int trial = 0; trial < 15; ++trial) {
            const int n = 3 + static_cast<int>(rng() % 20);
            const BitMatrix r = oracle::random_adjacency(n, 0.3, rng);
            if (r.popcount() == 0) continue;
            CommunityPartition one{std::vector<int>(n, 0)};
            CHECK(modularity(r, one) == doctest::Approx(0.0));
        }
    }
}

TEST_CASE("nmi properties and fixed values") {
    SUBCASE("identical partitions score 1") {
        CommunityPartition p{{0, 0, 1, 1, 2}};
        CHECK(nmi(p, p) == doctest::Approx(1.0));
    }
    SUBCASE("relabeling does not matter") {
        CommunityPartition p{{0, 0, 1, 1}};
        CommunityPartition q{{5, 5, 2, 2}};
        CHECK(nmi(p, q) == doctest::Approx(1.0));
    }
    SUBCASE("crossed pairs on 4 nodes have zero mutual information") {
        // {ab|cd} vs {ac|bd}: every contingency cell is 1/4 = product of
        // marginals, so I = 0.
        CommunityPartition p{{0, 0, 1, 1}};
        CommunityPartition q{{0, 1, 0, 1}};
        CHECK(nmi(p, q) == doctest::Approx(0.0));
    }
    SUBCASE("symmetry") {
        std::mt19937 rng(77);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<int> a(10), b(10);
            for (auto& c : a) c = static_cast<int>(rng() % 4);
            for (auto& c : b) c = static_cast<int>(rng() % 3);
            CommunityPartition pa{a}, pb{b};
            CHECK(nmi(pa, pb) == doctest::Approx(nmi(pb, pa)));
        }
    }
    SUBCASE("single community on both sides") {
        CommunityPartition p{{0, 0, 0}};
        CommunityPartition q{{4, 4, 4}};
        CHECK(nmi(p, q) == doctest::Approx(1.0));
    }
    SUBCASE("partition size mismatch is an error") {
        CommunityPartition p{{0, 0}};
        CommunityPartition q{{0, 0, 0}};
        CHECK_THROWS_AS(nmi(p, q), Error);
    }
}

TEST_CASE("cda fitness") {
    const Graph g = two_triangles();
    const BitMatrix a = g.adjacency();
    const GenePool pool = build_gene_pool(g, PoolKind::EdgeRemoval);
    const double unattacked = modularity(a, detect_communities(a));

    SUBCASE("empty perturbation scores the unattacked Q") {
        PopulationMatrix none(1, 0);
        CHECK(cda_fitness(a, none, pool) == FitnessVector{unattacked});
    }
    SUBCASE("removing an intra-triangle edge lowers Q") {
        PopulationMatrix batch(1, 1);
        batch.at(0, 0) = pool.index_of({0, 1});
        REQUIRE(batch.at(0, 0) >= 0);
        const FitnessVector f = cda_fitness(a, batch, pool);
        CHECK(f[0] < unattacked);
    }
    SUBCASE("removing every edge hits the -0.5 floor") {
        PopulationMatrix batch(1, pool.size());
        for (int j = 0; j < pool.size(); ++j) batch.at(0, j) = j;
        CHECK(cda_fitness(a, batch, pool) == FitnessVector{-0.5});
    }
    SUBCASE("edge addition pools are accepted too") {
        const GenePool add_pool = build_gene_pool(g, PoolKind::EdgeAddition);
        PopulationMatrix batch(1, 1);
        batch.at(0, 0) = 0;
        CHECK_NOTHROW(cda_fitness(a, batch, add_pool));
    }
}

TEST_CASE("link prediction split") {
    const Graph g = erdos_renyi(40, 0.15, 31);
    REQUIRE(g.edge_count() >= 10);
    SUBCASE("counts and disjointness") {
        const auto split = build_lp_split(g, 0.1, 7);
        const int expected = std::max(1, static_cast<int>(std::lround(0.1 * g.edge_count())));
        CHECK(static_cast<int>(split.test_edges.size()) == expected);
        CHECK(split.probe_nonedges.size() == split.test_edges.size());
        CHECK(split.train.edge_count() + expected == g.edge_count());
        for (const auto& e : split.test_edges) CHECK_FALSE(split.train.has_edge(e.first, e.second));
        for (const auto& e : split.probe_nonedges) CHECK_FALSE(g.has_edge(e.first, e.second));
    }
    SUBCASE("same seed gives an identical split") {
        const auto a = build_lp_split(g, 0.2, 9);
        const auto b = build_lp_split(g, 0.2, 9);
        CHECK(a.test_edges == b.test_edges);
        CHECK(a.probe_nonedges == b.probe_nonedges);
        CHECK(a.train.edges() == b.train.edges());
    }
    SUBCASE("rejects tiny graphs and bad fractions") {
        const Graph small(4, {{0, 1}, {1, 2}});
        CHECK_THROWS_AS(build_lp_split(small, 0.1, 1), Error);
        CHECK_THROWS_AS(build_lp_split(g, 0.6, 1), Error);
        CHECK_THROWS_AS(build_lp_split(g, 0.0, 1), Error);
    }
}

TEST_CASE("resource allocation scores") {
    SUBCASE("P3 endpoints share the middle node") {
        const BitMatrix a = path_graph(3).adjacency();
        CHECK(ra_score(a, 0, 2) == doctest::Approx(0.5));  // 1/deg(1) = 1/2
    }
    SUBCASE("disconnected pair scores zero") {
        const Graph g(4, {{0, 1}, {2, 3}});
        CHECK(ra_score(g.adjacency(), 0, 2) == doctest::Approx(0.0));
    }
    SUBCASE("K4 pair sums two common neighbors of degree 3") {
        const BitMatrix a = complete_graph(4).adjacency();
        CHECK(ra_score(a, 0, 1) == doctest::Approx(2.0 / 3.0));
    }
}

TEST_CASE("lp auc and precision") {
    LinkPredictionSplit split;
    split.train = Graph(6, {{0, 1}});
    split.test_edges = {{0, 2}, {0, 3}};
    split.probe_nonedges = {{1, 2}, {1, 3}};

    SUBCASE("all test edges above all probes gives AUC 1") {
        const std::vector<double> t = {2.0, 3.0}, p = {0.5, 1.0};
        const auto m = lp_auc_precision(split, t, p);
        CHECK(m.auc == doctest::Approx(1.0));
        CHECK(m.precision == doctest::Approx(1.0));
    }
    SUBCASE("all ties give AUC 0.5") {
        const std::vector<double> t = {1.0, 1.0}, p = {1.0, 1.0};
        CHECK(lp_auc_precision(split, t, p).auc == doctest::Approx(0.5));
    }
    SUBCASE("pairwise enumeration: scores 3,1 vs 2,0 give 3/4") {
        const std::vector<double> t = {3.0, 1.0}, p = {2.0, 0.0};
        CHECK(lp_auc_precision(split, t, p).auc == doctest::Approx(0.75));
    }
    SUBCASE("empty test set is an error") {
        LinkPredictionSplit empty;
        empty.train = split.train;
        CHECK_THROWS_AS(lp_auc_precision(empty, {}, {}), Error);
    }
}

TEST_CASE("lpa fitness") {
    const Graph g = planted_partition(4, 8, 0.8, 0.05, 17);
    const auto split = build_lp_split(g, 0.1, 5);
    const GenePool pool = build_gene_pool(split.train, PoolKind::EdgeRemoval);
    const BitMatrix train = split.train.adjacency();
    const double unattacked = evaluate_ra_predictor(split, train).auc;

    SUBCASE("empty perturbation reproduces the unattacked AUC") {
        PopulationMatrix none(1, 0);
        CHECK(lpa_fitness(split, none, pool) == FitnessVector{unattacked});
    }
    SUBCASE("removing every train edge forces scoreless ties at 0.5") {
        PopulationMatrix batch(1, pool.size());
        for (int j = 0; j < pool.size(); ++j) batch.at(0, j) = j;
        CHECK(lpa_fitness(split, batch, pool) == FitnessVector{0.5});
    }
}

TEST_CASE("fitness functions are pure: adjacency unchanged after batch calls") {
    const Graph g = erdos_renyi(20, 0.2, 12);
    const BitMatrix a = g.adjacency();
    const BitMatrix snapshot = a;
    const GenePool nodes = build_gene_pool(g, PoolKind::NodeRemoval);
    const GenePool edges = build_gene_pool(g, PoolKind::EdgeRemoval);
    PopulationMatrix batch(4, 3);
    std::mt19937 rng(3);
    for (auto& gv : batch.data) gv = static_cast<std::int32_t>(rng() % 5);
    (void)sixdst_fitness(a, batch, nodes);
    (void)pc_fitness(a, batch, nodes);
    (void)cda_fitness(a, batch, edges);
    CHECK(a == snapshot);
}
