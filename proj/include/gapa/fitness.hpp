#pragma once

#include <memory>
#include <string>

#include "gapa/accessibility.hpp"
#include "gapa/community.hpp"
#include "gapa/gene_pool.hpp"
#include "gapa/link_prediction.hpp"
#include "gapa/population.hpp"

namespace gapa {

// Batch evaluator contract used by the execution modes. Implementations
// are pure: they never mutate shared state, so blocks of rows can be
// evaluated concurrently on any worker.
class FitnessFunction {
public:
    virtual ~FitnessFunction() = default;

    virtual Direction direction() const = 0;
    virtual double evaluate_one(std::span<const std::int32_t> genes) const = 0;

    // Row-by-row by default; overriding is an optimization, never a
    // semantic change (modes rely on batch == per-row results).
    virtual FitnessVector evaluate_batch(const PopulationMatrix& batch) const;
};

// --- Critical-node detection -------------------------------------------

// Max row sum of the reachability closure = size of the largest connected
// component. Removed nodes stay as singleton rows summing to 1. Minimize.
FitnessVector sixdst_fitness(const BitMatrix& adjacency, const PopulationMatrix& batch,
                             const GenePool& pool, ClosurePolicy policy = ClosurePolicy::Exact);

// Pairwise connectivity sum |C|(|C|-1)/2 over components. Minimize.
FitnessVector pc_fitness(const BitMatrix& adjacency, const PopulationMatrix& batch,
                         const GenePool& pool);

// --- Community-detection attack ----------------------------------------

// Modularity of the detector's partition on the perturbed graph; an
// edgeless perturbed graph scores the -0.5 floor. Minimize.
FitnessVector cda_fitness(const BitMatrix& adjacency, const PopulationMatrix& batch,
                          const GenePool& pool);

// --- Link-prediction attack --------------------------------------------

// AUC of the RA predictor on the perturbed train graph against the fixed
// split. The pool must be built over the train graph. Minimize.
FitnessVector lpa_fitness(const LinkPredictionSplit& split, const PopulationMatrix& batch,
                          const GenePool& pool);

// --- Evaluator objects for the runner ------------------------------------

class SixDstObjective : public FitnessFunction {
public:
    SixDstObjective(BitMatrix adjacency, const GenePool& pool,
                    ClosurePolicy policy = ClosurePolicy::Exact);
    Direction direction() const override { return Direction::Minimize; }
    double evaluate_one(std::span<const std::int32_t> genes) const override;

private:
    BitMatrix adjacency_;
    const GenePool& pool_;
    ClosurePolicy policy_;
};

class PairwiseConnectivityObjective : public FitnessFunction {
public:
    PairwiseConnectivityObjective(BitMatrix adjacency, const GenePool& pool);
    Direction direction() const override { return Direction::Minimize; }
    double evaluate_one(std::span<const std::int32_t> genes) const override;

private:
    BitMatrix adjacency_;
    const GenePool& pool_;
};

class ModularityAttackObjective : public FitnessFunction {
public:
    ModularityAttackObjective(BitMatrix adjacency, const GenePool& pool);
    Direction direction() const override { return Direction::Minimize; }
    double evaluate_one(std::span<const std::int32_t> genes) const override;

private:
    BitMatrix adjacency_;
    const GenePool& pool_;
};

class LinkPredictionAttackObjective : public FitnessFunction {
public:
    LinkPredictionAttackObjective(const LinkPredictionSplit& split, const GenePool& pool);
    Direction direction() const override { return Direction::Minimize; }
    double evaluate_one(std::span<const std::int32_t> genes) const override;

private:
    const LinkPredictionSplit& split_;
    BitMatrix train_adjacency_;
    const GenePool& pool_;
};

}  // namespace gapa
