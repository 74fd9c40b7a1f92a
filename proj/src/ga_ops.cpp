#include "gapa/ga_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gapa/error.hpp"

namespace gapa {

void GAParams::validate() const {
    if (pop_size < 2) throw ConfigError("pop_size must be >= 2");
    if (budget < 1) throw ConfigError("budget must be >= 1");
    if (pc < 0.0 || pc > 1.0) throw ConfigError("pc must be in [0, 1]");
    if (pm < 0.0 || pm > 1.0) throw ConfigError("pm must be in [0, 1]");
    if (eda_interval && *eda_interval < 1) throw ConfigError("eda_interval must be >= 1");
}

PopulationMatrix init_population_block(int pool_size, int row_first, int row_count, int budget,
                                       const RngPolicy& rng, std::uint64_t generation) {
    if (pool_size < 1) throw Error("init_population: empty gene pool");
    PopulationMatrix pop(row_count, budget);
    for (int i = 0; i < row_count; ++i) {
        RngStream stream = rng.stream(generation, StreamRole::Init, static_cast<std::uint64_t>(row_first + i));
        for (int j = 0; j < budget; ++j)
            pop.at(i, j) = static_cast<std::int32_t>(stream.next_index(static_cast<std::uint32_t>(pool_size)));
    }
    return pop;
}

PopulationMatrix init_population(int pool_size, int pop_size, int budget,
                                 const RngPolicy& rng, std::uint64_t generation) {
    return init_population_block(pool_size, 0, pop_size, budget, rng, generation);
}

namespace {

MaskMatrix make_mask(int rows, int cols, double rate, StreamRole role,
                     const RngPolicy& rng, std::uint64_t generation) {
    MaskMatrix mask(rows, cols);
    for (int i = 0; i < rows; ++i) {
        RngStream stream = rng.stream(generation, role, static_cast<std::uint64_t>(i));
        for (int j = 0; j < cols; ++j)
            mask.at(i, j) = stream.next_bernoulli(rate) ? 1 : 0;
    }
    return mask;
}

}  // namespace

// Rank-based selection weights: best rank weighs s, worst weighs 1, with
// tied fitness sharing the average weight of its span. All-equal fitness
// therefore degenerates to uniform sampling.
std::vector<double> selection_weights(const FitnessVector& fitness, Direction direction) {
    const int s = static_cast<int>(fitness.size());
    for (double f : fitness)
        if (!std::isfinite(f)) throw Error("selection: non-finite fitness");

    std::vector<int> order(s);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return direction == Direction::Maximize ? fitness[a] > fitness[b] : fitness[a] < fitness[b];
    });

    std::vector<double> weights(s, 0.0);
    int i = 0;
    while (i < s) {
        int j = i + 1;
        while (j < s && fitness[order[j]] == fitness[order[i]]) ++j;
        // ranks i..j-1 share the average of weights (s - i) .. (s - j + 1)
        const double w = (static_cast<double>(s - i) + static_cast<double>(s - j + 1)) / 2.0;
        for (int r = i; r < j; ++r) weights[order[r]] = w;
        i = j;
    }
    return weights;
}

int weighted_pick(const std::vector<double>& cumulative, double target) {
    const int pick = static_cast<int>(
        std::upper_bound(cumulative.begin(), cumulative.end(), target) - cumulative.begin());
    return std::min(pick, static_cast<int>(cumulative.size()) - 1);
}

MaskMatrix make_crossover_mask(int rows, int cols, double pc,
                               const RngPolicy& rng, std::uint64_t generation) {
    return make_mask(rows, cols, pc, StreamRole::CrossoverMask, rng, generation);
}

MaskMatrix make_mutation_mask(int rows, int cols, double pm,
                              const RngPolicy& rng, std::uint64_t generation) {
    return make_mask(rows, cols, pm, StreamRole::MutationMask, rng, generation);
}

PopulationMatrix make_mutation_indices(int rows, int cols, int pool_size,
                                       const RngPolicy& rng, std::uint64_t generation) {
    PopulationMatrix fresh(rows, cols);
    for (int i = 0; i < rows; ++i) {
        RngStream stream = rng.stream(generation, StreamRole::MutationIndex, static_cast<std::uint64_t>(i));
        for (int j = 0; j < cols; ++j)
            fresh.at(i, j) = static_cast<std::int32_t>(stream.next_index(static_cast<std::uint32_t>(pool_size)));
    }
    return fresh;
}

PopulationMatrix roulette_select(const PopulationMatrix& pop, const FitnessVector& fitness,
                                 Direction direction, const RngPolicy& rng,
                                 std::uint64_t generation) {
    const int s = pop.rows;
    if (static_cast<int>(fitness.size()) != s) throw Error("roulette_select: fitness length mismatch");
    for (double f : fitness)
        if (!std::isfinite(f)) throw Error("roulette_select: non-finite fitness");

    const std::vector<double> weights = selection_weights(fitness, direction);
    std::vector<double> cumulative(s);
    double total = 0.0;
    for (int i = 0; i < s; ++i) {
        total += weights[i];
        cumulative[i] = total;
    }

    PopulationMatrix partners(s, pop.cols);
    for (int i = 0; i < s; ++i) {
        RngStream stream = rng.stream(generation, StreamRole::Select, static_cast<std::uint64_t>(i));
        const int src = weighted_pick(cumulative, stream.next_unit() * total);
        std::copy(pop.row(src).begin(), pop.row(src).end(), partners.row(i).begin());
    }
    return partners;
}

PopulationMatrix crossover(const PopulationMatrix& pop, const PopulationMatrix& partners,
                           const MaskMatrix& rc) {
    if (pop.rows != partners.rows || pop.cols != partners.cols ||
        pop.rows != rc.rows || pop.cols != rc.cols)
        throw Error("crossover: shape mismatch");
    PopulationMatrix out(pop.rows, pop.cols);
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = rc.data[i] ? partners.data[i] : pop.data[i];
    return out;
}

PopulationMatrix crossover(const PopulationMatrix& pop, const PopulationMatrix& partners,
                           double pc, const RngPolicy& rng, std::uint64_t generation) {
    return crossover(pop, partners, make_crossover_mask(pop.rows, pop.cols, pc, rng, generation));
}

PopulationMatrix mutate(const PopulationMatrix& c_pop, const MaskMatrix& rm,
                        const PopulationMatrix& fresh) {
    if (c_pop.rows != rm.rows || c_pop.cols != rm.cols ||
        c_pop.rows != fresh.rows || c_pop.cols != fresh.cols)
        throw Error("mutate: shape mismatch");
    PopulationMatrix out(c_pop.rows, c_pop.cols);
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = rm.data[i] ? fresh.data[i] : c_pop.data[i];
    return out;
}

PopulationMatrix mutate(const PopulationMatrix& c_pop, double pm, int pool_size,
                        const RngPolicy& rng, std::uint64_t generation) {
    return mutate(c_pop,
                  make_mutation_mask(c_pop.rows, c_pop.cols, pm, rng, generation),
                  make_mutation_indices(c_pop.rows, c_pop.cols, pool_size, rng, generation));
}

PopulationMatrix mutate_block(const PopulationMatrix& block, int row_offset,
                              double pm, int pool_size, const RngPolicy& rng,
                              std::uint64_t generation) {
    PopulationMatrix out(block.rows, block.cols);
    for (int i = 0; i < block.rows; ++i) {
        RngStream mask_stream = rng.stream(generation, StreamRole::MutationMask, static_cast<std::uint64_t>(row_offset + i));
        RngStream index_stream = rng.stream(generation, StreamRole::MutationIndex, static_cast<std::uint64_t>(row_offset + i));
        for (int j = 0; j < block.cols; ++j) {
            const bool flip = mask_stream.next_bernoulli(pm);
            const std::int32_t fresh = static_cast<std::int32_t>(index_stream.next_index(static_cast<std::uint32_t>(pool_size)));
            out.at(i, j) = flip ? fresh : block.at(i, j);
        }
    }
    return out;
}

std::pair<PopulationMatrix, FitnessVector> elitism(const PopulationMatrix& pop,
                                                   const PopulationMatrix& m_pop,
                                                   const FitnessVector& fit_pop,
                                                   const FitnessVector& fit_m,
                                                   Direction direction) {
    const int s = pop.rows;
    if (m_pop.rows != s || m_pop.cols != pop.cols) throw Error("elitism: shape mismatch");
    if (static_cast<int>(fit_pop.size()) != s || static_cast<int>(fit_m.size()) != s)
        throw Error("elitism: fitness length mismatch");
    for (double f : fit_pop)
        if (std::isnan(f)) throw Error("elitism: NaN fitness");
    for (double f : fit_m)
        if (std::isnan(f)) throw Error("elitism: NaN fitness");

    auto fitness_of = [&](int idx) { return idx < s ? fit_pop[idx] : fit_m[idx - s]; };

    std::vector<int> order(2 * s);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return direction == Direction::Maximize ? fitness_of(a) > fitness_of(b)
                                                : fitness_of(a) < fitness_of(b);
    });

    PopulationMatrix next(s, pop.cols);
    FitnessVector next_fit(s);
    for (int i = 0; i < s; ++i) {
        const int idx = order[i];
        const auto src = idx < s ? pop.row(idx) : m_pop.row(idx - s);
        std::copy(src.begin(), src.end(), next.row(i).begin());
        next_fit[i] = fitness_of(idx);
    }
    return {std::move(next), std::move(next_fit)};
}

PopulationMatrix eda_sample(const PopulationMatrix& elite, int elite_count, int pool_size,
                            const RngPolicy& rng, std::uint64_t generation,
                            bool add_one_smoothing) {
    if (elite_count < 1 || elite_count > elite.rows) throw Error("eda_sample: invalid elite count");
    const int s = elite.rows;
    const int k = elite.cols;
    // Weight of gene g at a locus is (elite occurrences of g) + smoothing.
    // Drawing an integer in [0, elite_count + pool_size) realizes exactly
    // that mixture: values below elite_count index an elite entry, the rest
    // map to the uniform smoothing mass.
    const std::uint32_t bound = static_cast<std::uint32_t>(
        add_one_smoothing ? elite_count + pool_size : elite_count);

    PopulationMatrix out(s, k);
    for (int i = 0; i < s; ++i) {
        RngStream stream = rng.stream(generation, StreamRole::Select, static_cast<std::uint64_t>(i));
        for (int j = 0; j < k; ++j) {
            const std::uint32_t v = stream.next_index(bound);
            out.at(i, j) = v < static_cast<std::uint32_t>(elite_count)
                               ? elite.at(static_cast<int>(v), j)
                               : static_cast<std::int32_t>(v - elite_count);
        }
    }
    return out;
}

}  // namespace gapa
