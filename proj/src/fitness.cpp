#include "gapa/fitness.hpp"

#include <algorithm>

#include "gapa/components.hpp"
#include "gapa/error.hpp"

namespace gapa {

FitnessVector FitnessFunction::evaluate_batch(const PopulationMatrix& batch) const {
    FitnessVector out(batch.rows);
    for (int i = 0; i < batch.rows; ++i) out[i] = evaluate_one(batch.row(i));
    return out;
}

namespace {

double sixdst_one(const BitMatrix& adjacency, const GenePool& pool,
                  std::span<const std::int32_t> genes, ClosurePolicy policy) {
    BitMatrix perturbed = adjacency;
    pool.apply_in_place(perturbed, genes);
    const BitMatrix closure = accessibility_matrix(perturbed, policy);
    int mcn = 0;
    for (int u = 0; u < closure.size(); ++u) mcn = std::max(mcn, closure.row_popcount(u));
    return static_cast<double>(mcn);
}

double pc_one(const BitMatrix& adjacency, const GenePool& pool,
              std::span<const std::int32_t> genes) {
    BitMatrix perturbed = adjacency;
    pool.apply_in_place(perturbed, genes);
    return static_cast<double>(pairwise_connectivity(connected_components(perturbed)));
}

double cda_one(const BitMatrix& adjacency, const GenePool& pool,
               std::span<const std::int32_t> genes) {
    BitMatrix perturbed = adjacency;
    pool.apply_in_place(perturbed, genes);
    if (perturbed.popcount() == 0) return -0.5;  // Q undefined: most-attacked sentinel
    return modularity(perturbed, detect_communities(perturbed));
}

double lpa_one(const LinkPredictionSplit& split, const BitMatrix& train_adjacency,
               const GenePool& pool, std::span<const std::int32_t> genes) {
    BitMatrix perturbed = train_adjacency;
    pool.apply_in_place(perturbed, genes);
    return evaluate_ra_predictor(split, perturbed).auc;
}

void require_kind(const GenePool& pool, PoolKind kind, const char* what) {
    if (pool.kind() != kind) throw Error(std::string(what) + ": incompatible gene pool kind");
}

void require_edge_kind(const GenePool& pool, const char* what) {
    if (pool.kind() == PoolKind::NodeRemoval)
        throw Error(std::string(what) + ": incompatible gene pool kind");
}

}  // namespace

FitnessVector sixdst_fitness(const BitMatrix& adjacency, const PopulationMatrix& batch,
                             const GenePool& pool, ClosurePolicy policy) {
    require_kind(pool, PoolKind::NodeRemoval, "sixdst_fitness");
    FitnessVector out(batch.rows);
    for (int i = 0; i < batch.rows; ++i) out[i] = sixdst_one(adjacency, pool, batch.row(i), policy);
    return out;
}

FitnessVector pc_fitness(const BitMatrix& adjacency, const PopulationMatrix& batch,
                         const GenePool& pool) {
    require_kind(pool, PoolKind::NodeRemoval, "pc_fitness");
    FitnessVector out(batch.rows);
    for (int i = 0; i < batch.rows; ++i) out[i] = pc_one(adjacency, pool, batch.row(i));
    return out;
}

FitnessVector cda_fitness(const BitMatrix& adjacency, const PopulationMatrix& batch,
                          const GenePool& pool) {
    require_edge_kind(pool, "cda_fitness");
    FitnessVector out(batch.rows);
    for (int i = 0; i < batch.rows; ++i) out[i] = cda_one(adjacency, pool, batch.row(i));
    return out;
}

FitnessVector lpa_fitness(const LinkPredictionSplit& split, const PopulationMatrix& batch,
                          const GenePool& pool) {
    require_kind(pool, PoolKind::EdgeRemoval, "lpa_fitness");
    const BitMatrix train = split.train.adjacency();
    FitnessVector out(batch.rows);
    for (int i = 0; i < batch.rows; ++i) out[i] = lpa_one(split, train, pool, batch.row(i));
    return out;
}

SixDstObjective::SixDstObjective(BitMatrix adjacency, const GenePool& pool, ClosurePolicy policy)
    : adjacency_(std::move(adjacency)), pool_(pool), policy_(policy) {
    require_kind(pool_, PoolKind::NodeRemoval, "SixDstObjective");
}

double SixDstObjective::evaluate_one(std::span<const std::int32_t> genes) const {
    return sixdst_one(adjacency_, pool_, genes, policy_);
}

PairwiseConnectivityObjective::PairwiseConnectivityObjective(BitMatrix adjacency, const GenePool& pool)
    : adjacency_(std::move(adjacency)), pool_(pool) {
    require_kind(pool_, PoolKind::NodeRemoval, "PairwiseConnectivityObjective");
}

double PairwiseConnectivityObjective::evaluate_one(std::span<const std::int32_t> genes) const {
    return pc_one(adjacency_, pool_, genes);
}

ModularityAttackObjective::ModularityAttackObjective(BitMatrix adjacency, const GenePool& pool)
    : adjacency_(std::move(adjacency)), pool_(pool) {
    require_edge_kind(pool_, "ModularityAttackObjective");
}

double ModularityAttackObjective::evaluate_one(std::span<const std::int32_t> genes) const {
    return cda_one(adjacency_, pool_, genes);
}

LinkPredictionAttackObjective::LinkPredictionAttackObjective(const LinkPredictionSplit& split,
                                                             const GenePool& pool)
    : split_(split), train_adjacency_(split.train.adjacency()), pool_(pool) {
    require_kind(pool_, PoolKind::EdgeRemoval, "LinkPredictionAttackObjective");
}

double LinkPredictionAttackObjective::evaluate_one(std::span<const std::int32_t> genes) const {
    return lpa_one(split_, train_adjacency_, pool_, genes);
}

}  // namespace gapa
