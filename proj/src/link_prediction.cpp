#include "gapa/link_prediction.hpp"

#include <algorithm>
#include <cmath>

#include "gapa/error.hpp"
#include "gapa/rng.hpp"

namespace gapa {

LinkPredictionSplit build_lp_split(const Graph& g, double test_fraction, std::uint64_t seed) {
    if (test_fraction <= 0.0 || test_fraction > 0.5)
        throw Error("build_lp_split: test fraction must be in (0, 0.5]");
    if (g.edge_count() < 10) throw Error("build_lp_split: graph has fewer than 10 edges");

    const int m = g.edge_count();
    const int test_count = std::max(1, static_cast<int>(std::lround(test_fraction * m)));

    RngStream rng(mix64(seed ^ 0x4c505350ull));
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    for (int i = m - 1; i > 0; --i)
        std::swap(order[i], order[rng.next_index(static_cast<std::uint32_t>(i + 1))]);

    LinkPredictionSplit split;
    split.seed = seed;
    std::vector<std::pair<int, int>> train_edges;
    for (int i = 0; i < m; ++i) {
        const auto e = g.edges()[order[i]];
        if (i < test_count)
            split.test_edges.push_back(e);
        else
            train_edges.push_back(e);
    }
    std::sort(split.test_edges.begin(), split.test_edges.end());
    std::sort(train_edges.begin(), train_edges.end());
    split.train = Graph(g.node_count(), std::move(train_edges), g.labels());

    // Equal-sized probe set of true non-edges, absent from the full graph.
    const int n = g.node_count();
    std::unordered_map<std::uint64_t, bool> used;
    while (static_cast<int>(split.probe_nonedges.size()) < test_count) {
        const int u = static_cast<int>(rng.next_index(static_cast<std::uint32_t>(n)));
        const int v = static_cast<int>(rng.next_index(static_cast<std::uint32_t>(n)));
        if (u == v || g.has_edge(u, v)) continue;
        const auto key = edge_key(u, v);
        if (used.count(key)) continue;
        used.emplace(key, true);
        split.probe_nonedges.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(split.probe_nonedges.begin(), split.probe_nonedges.end());
    return split;
}

double ra_score(const BitMatrix& adjacency, int u, int v) {
    const auto row_u = adjacency.row(u);
    const auto row_v = adjacency.row(v);
    double score = 0.0;
    for (std::size_t wi = 0; wi < row_u.size(); ++wi) {
        std::uint64_t bits = row_u[wi] & row_v[wi];
        while (bits) {
            const int z = static_cast<int>(wi * 64 + std::countr_zero(bits));
            bits &= bits - 1;
            const int deg = adjacency.row_popcount(z);
            if (deg > 0) score += 1.0 / static_cast<double>(deg);
        }
    }
    return score;
}

std::vector<double> ra_scores(const BitMatrix& adjacency,
                              std::span<const std::pair<int, int>> pairs) {
    std::vector<double> scores;
    scores.reserve(pairs.size());
    for (auto [u, v] : pairs) scores.push_back(ra_score(adjacency, u, v));
    return scores;
}

LpMetrics lp_auc_precision(const LinkPredictionSplit& split,
                           std::span<const double> test_scores,
                           std::span<const double> probe_scores) {
    if (split.test_edges.empty()) throw Error("lp_auc_precision: empty test set");
    if (test_scores.size() != split.test_edges.size() ||
        probe_scores.size() != split.probe_nonedges.size())
        throw Error("lp_auc_precision: score count mismatch");

    double wins = 0.0;
    for (double t : test_scores)
        for (double p : probe_scores) {
            if (t > p)
                wins += 1.0;
            else if (t == p)
                wins += 0.5;
        }
    LpMetrics metrics;
    metrics.auc = wins / (static_cast<double>(test_scores.size()) * static_cast<double>(probe_scores.size()));

    // Rank all scored candidates; take the top |test|.
    struct Candidate {
        double score;
        std::pair<int, int> pair;
        bool is_test;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(test_scores.size() + probe_scores.size());
    for (std::size_t i = 0; i < test_scores.size(); ++i)
        candidates.push_back({test_scores[i], split.test_edges[i], true});
    for (std::size_t i = 0; i < probe_scores.size(); ++i)
        candidates.push_back({probe_scores[i], split.probe_nonedges[i], false});
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.pair < b.pair;
    });
    const std::size_t top = test_scores.size();
    std::size_t hits = 0;
    for (std::size_t i = 0; i < top; ++i) hits += candidates[i].is_test ? 1 : 0;
    metrics.precision = static_cast<double>(hits) / static_cast<double>(top);
    return metrics;
}

LpMetrics evaluate_ra_predictor(const LinkPredictionSplit& split, const BitMatrix& train_adjacency) {
    const auto test_scores = ra_scores(train_adjacency, split.test_edges);
    const auto probe_scores = ra_scores(train_adjacency, split.probe_nonedges);
    return lp_auc_precision(split, test_scores, probe_scores);
}

}  // namespace gapa
