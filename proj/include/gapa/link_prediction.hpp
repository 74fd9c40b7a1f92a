#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gapa/bit_matrix.hpp"
#include "gapa/graph.hpp"

namespace gapa {

// Evaluation split for link-prediction attacks: a fraction of edges is
// hidden from the train graph and paired with an equal-sized sample of
// non-edges. Deterministic for a given (graph, fraction, seed).
struct LinkPredictionSplit {
    Graph train;
    std::vector<std::pair<int, int>> test_edges;
    std::vector<std::pair<int, int>> probe_nonedges;
    std::uint64_t seed = 0;
};

// Throws Error unless fraction is in (0, 0.5] and the graph has >= 10 edges.
LinkPredictionSplit build_lp_split(const Graph& g, double test_fraction, std::uint64_t seed);

// Resource-allocation index: RA(x, y) = sum over common neighbors z of
// 1/deg(z). Pairs with no common neighbor score 0.
double ra_score(const BitMatrix& adjacency, int u, int v);
std::vector<double> ra_scores(const BitMatrix& adjacency,
                              std::span<const std::pair<int, int>> pairs);

// AUC over the full (test x probe) pair grid, ties counting 0.5; precision
// is the fraction of hidden edges among the top-L scored candidates with
// L = |test|. Candidate order on score ties is by ascending pair, which
// keeps both metrics exactly reproducible.
struct LpMetrics {
    double auc = 0.0;
    double precision = 0.0;
};
LpMetrics lp_auc_precision(const LinkPredictionSplit& split,
                           std::span<const double> test_scores,
                           std::span<const double> probe_scores);

// Convenience: RA scoring of the split's pairs on a given train adjacency.
LpMetrics evaluate_ra_predictor(const LinkPredictionSplit& split, const BitMatrix& train_adjacency);

}  // namespace gapa
