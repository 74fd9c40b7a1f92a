#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "gapa/population.hpp"
#include "gapa/rng.hpp"

namespace gapa {

struct GAParams {
    double pc = 0.8;                        // crossover rate
    double pm = 0.1;                        // mutation rate
    int pop_size = 100;                     // s
    int budget = 1;                         // k, genes per individual
    int iterations = 100;                   // generation count
    Direction direction = Direction::Minimize;
    std::optional<int> eda_interval;        // sample-from-elite every n-th generation
    std::uint64_t seed = 1;

    void validate() const;                  // throws ConfigError
};

// All operators are pure functions of (inputs, derived RNG streams).
// Masks and draws are keyed by (seed, generation, role, row), so the same
// generation number always reproduces the same matrices, no matter which
// worker executes which rows.

PopulationMatrix init_population(int pool_size, int pop_size, int budget,
                                 const RngPolicy& rng, std::uint64_t generation = 0);
// Initializes only the rows [row_first, row_first + row_count); identical
// to the corresponding rows of init_population because streams are keyed
// by the global row index.
PopulationMatrix init_population_block(int pool_size, int row_first, int row_count, int budget,
                                       const RngPolicy& rng, std::uint64_t generation = 0);

// Rank weights used by roulette selection (exposed so the scalar serial
// path and the batch path share one definition), and the cumulative-sum
// pick both paths use.
std::vector<double> selection_weights(const FitnessVector& fitness, Direction direction);
int weighted_pick(const std::vector<double>& cumulative, double target);

MaskMatrix make_crossover_mask(int rows, int cols, double pc,
                               const RngPolicy& rng, std::uint64_t generation);
MaskMatrix make_mutation_mask(int rows, int cols, double pm,
                              const RngPolicy& rng, std::uint64_t generation);
PopulationMatrix make_mutation_indices(int rows, int cols, int pool_size,
                                       const RngPolicy& rng, std::uint64_t generation);

// Roulette-wheel partner matrix: s rows sampled with replacement.
// Weights are rank-based (best rank weighs s, worst weighs 1) with ties
// sharing the average weight of their span, so all-equal fitness
// degenerates to uniform sampling. Direction-aware.
PopulationMatrix roulette_select(const PopulationMatrix& pop, const FitnessVector& fitness,
                                 Direction direction, const RngPolicy& rng,
                                 std::uint64_t generation);

// C_POP = partners (.) RC + pop (.) (1 - RC)
PopulationMatrix crossover(const PopulationMatrix& pop, const PopulationMatrix& partners,
                           const MaskMatrix& rc);
PopulationMatrix crossover(const PopulationMatrix& pop, const PopulationMatrix& partners,
                           double pc, const RngPolicy& rng, std::uint64_t generation);

// M_POP = c_pop (.) (1 - RM) + fresh (.) RM
PopulationMatrix mutate(const PopulationMatrix& c_pop, const MaskMatrix& rm,
                        const PopulationMatrix& fresh);
PopulationMatrix mutate(const PopulationMatrix& c_pop, double pm, int pool_size,
                        const RngPolicy& rng, std::uint64_t generation);
// Mutates a standalone block whose first row is global row `row_offset`;
// used by workers that own a contiguous slice of the population.
PopulationMatrix mutate_block(const PopulationMatrix& block, int row_offset,
                              double pm, int pool_size, const RngPolicy& rng,
                              std::uint64_t generation);

// Stacks the 2s rows of (pop, m_pop), stable-sorts by fitness (best first;
// ties keep original-population rows ahead of mutated rows) and returns the
// top s rows with their fitness. Row 0 of the result is the generation best.
// Throws Error on NaN fitness.
std::pair<PopulationMatrix, FitnessVector> elitism(const PopulationMatrix& pop,
                                                   const PopulationMatrix& m_pop,
                                                   const FitnessVector& fit_pop,
                                                   const FitnessVector& fit_m,
                                                   Direction direction);

// Samples a full population column-independently from the per-locus
// empirical distribution of the top `elite_count` rows. With
// add_one_smoothing every pool gene gains one pseudo-count per locus,
// which keeps degenerate elites from freezing evolution; without it the
// sample reproduces the empirical distribution exactly.
PopulationMatrix eda_sample(const PopulationMatrix& elite, int elite_count, int pool_size,
                            const RngPolicy& rng, std::uint64_t generation,
                            bool add_one_smoothing = true);

}  // namespace gapa
