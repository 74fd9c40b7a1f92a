#include "gapa/modes.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>
#include <thread>

#include "gapa/channel.hpp"
#include "gapa/error.hpp"

namespace gapa {

namespace {

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

void validate_for_run(const GAParams& params) {
    params.validate();
    if (params.iterations < 1) throw ConfigError("iterations must be >= 1");
}

bool is_eda_generation(const GAParams& params, std::uint64_t generation) {
    return params.eda_interval && generation % static_cast<std::uint64_t>(*params.eda_interval) == 0;
}

void record_generation(RunResult& result, const FitnessVector& fit, GenerationStats stats) {
    stats.best = fit.front();
    stats.mean = std::accumulate(fit.begin(), fit.end(), 0.0) / static_cast<double>(fit.size());
    // The three overhead columns are defined to sum to wall: compute is the
    // remainder after exchange and lifecycle.
    stats.compute_seconds = std::max(0.0, stats.wall_seconds - stats.exchange_seconds - stats.lifecycle_seconds);
    result.history.push_back(stats);
    result.total_wall_seconds += stats.wall_seconds;
}

void finalize_result(RunResult& result, PopulationMatrix pop, FitnessVector fit) {
    result.best_individual.assign(pop.row(0).begin(), pop.row(0).end());
    result.best_fitness = fit.front();
    result.final_population = std::move(pop);
    result.final_fitness = std::move(fit);
}

// ---------------------------------------------------------------- workers

struct ShardStats {
    double compute = 0.0;
    double exchange = 0.0;
    double lifecycle = 0.0;
    std::uint64_t messages = 0;
};

// Evaluates `rows` with `shards` ephemeral workers over contiguous row
// blocks; results are merged by row offset. Used by SM every generation
// and by each MNM worker for its own block.
FitnessVector eval_with_ephemeral_workers(const FitnessFunction& fitness,
                                          const PopulationMatrix& rows, int shards,
                                          std::uint64_t generation, ShardStats& stats) {
    const auto blocks = partition_rows(rows.rows, shards);
    auto results = std::make_shared<Channel<WorkerMessage>>();
    std::vector<std::shared_ptr<Channel<WorkerMessage>>> inboxes;
    // Slices are materialized up front so nothing can throw between
    // spawning a worker and handing it its input.
    std::vector<WorkerMessage> outbound(shards);
    for (int w = 0; w < shards; ++w) {
        inboxes.push_back(std::make_shared<Channel<WorkerMessage>>());
        outbound[w].kind = MessageKind::PopulationSlice;
        outbound[w].generation = generation;
        outbound[w].row_offset = blocks[w].first;
        outbound[w].rows = rows.slice(blocks[w].first, blocks[w].second);
    }

    const double spawn_start = now_seconds();
    std::vector<std::thread> threads;
    threads.reserve(shards);
    for (int w = 0; w < shards; ++w) {
        threads.emplace_back([inbox = inboxes[w], results, &fitness] {
            WorkerMessage in = inbox->receive();
            WorkerMessage out;
            out.kind = MessageKind::FitnessSlice;
            out.generation = in.generation;
            out.row_offset = in.row_offset;
            const double t0 = now_seconds();
            try {
                out.fitness = fitness.evaluate_batch(in.rows);
            } catch (...) {
                out.fitness.assign(static_cast<std::size_t>(in.rows.rows),
                                   std::numeric_limits<double>::quiet_NaN());
            }
            out.compute_seconds = now_seconds() - t0;
            results->send(std::move(out));
        });
    }
    stats.lifecycle += now_seconds() - spawn_start;

    const double send_start = now_seconds();
    for (int w = 0; w < shards; ++w) inboxes[w]->send(std::move(outbound[w]));
    const double send_seconds = now_seconds() - send_start;
    stats.messages += static_cast<std::uint64_t>(shards);

    FitnessVector merged(rows.rows, 0.0);
    const double wait_start = now_seconds();
    double max_compute = 0.0;
    for (int w = 0; w < shards; ++w) {
        WorkerMessage msg = results->receive();
        std::copy(msg.fitness.begin(), msg.fitness.end(), merged.begin() + msg.row_offset);
        max_compute = std::max(max_compute, msg.compute_seconds);
    }
    const double wait_seconds = now_seconds() - wait_start;
    stats.messages += static_cast<std::uint64_t>(shards);

    const double join_start = now_seconds();
    for (auto& t : threads) t.join();
    stats.lifecycle += now_seconds() - join_start;

    stats.exchange += send_seconds + std::max(0.0, wait_seconds - max_compute);
    stats.compute += max_compute;
    return merged;
}

// ------------------------------------------------------------ single lane

// Shared driver for modes S (direct batch fitness) and SM (sharded).
RunResult run_single_lane(const GAParams& params, const GenePool& pool,
                          const FitnessFunction& fitness, const ModeTopology& topology) {
    validate_for_run(params);
    const RngPolicy policy(params.seed);
    const int s = params.pop_size;
    const Direction direction = params.direction;
    const bool sharded = topology.mode == Mode::SM;
    const int pn = sharded ? effective_workers(topology, topology.pn, s) : 1;

    RunResult result;
    result.topology = topology;

    auto evaluate = [&](const PopulationMatrix& rows, std::uint64_t gen, GenerationStats& stats) {
        if (!sharded) {
            ++result.fitness_batch_calls;
            return fitness.evaluate_batch(rows);
        }
        ShardStats shard;
        FitnessVector fv = eval_with_ephemeral_workers(fitness, rows, pn, gen, shard);
        stats.exchange_seconds += shard.exchange;
        stats.lifecycle_seconds += shard.lifecycle;
        stats.messages += shard.messages;
        return fv;
    };

    PopulationMatrix pop;
    FitnessVector fit;
    for (std::uint64_t gen = 1; gen <= static_cast<std::uint64_t>(params.iterations); ++gen) {
        GenerationStats stats;
        const double t0 = now_seconds();
        if (gen == 1) {
            pop = init_population(pool.size(), s, params.budget, policy);
            fit = evaluate(pop, 0, stats);
        }
        PopulationMatrix crossed =
            is_eda_generation(params, gen)
                ? eda_sample(pop, s, pool.size(), policy, gen)
                : crossover(pop, roulette_select(pop, fit, direction, policy, gen), params.pc, policy, gen);
        PopulationMatrix mutated = mutate(crossed, params.pm, pool.size(), policy, gen);
        FitnessVector fit_m = evaluate(mutated, gen, stats);
        std::tie(pop, fit) = elitism(pop, mutated, fit, fit_m, direction);
        stats.wall_seconds = now_seconds() - t0;
        record_generation(result, fit, stats);
    }
    finalize_result(result, std::move(pop), std::move(fit));
    return result;
}

// ------------------------------------------------------------- multi lane

struct GatherInfo {
    double wait_seconds = 0.0;
    double worker_exchange = 0.0;   // critical worker's own exchange
    double worker_lifecycle = 0.0;  // critical worker's own lifecycle
    double max_busy = 0.0;
};

// Persistent-worker modes M and MNM.
RunResult run_multi_lane(const GAParams& params, const GenePool& pool,
                         const FitnessFunction& fitness, const ModeTopology& topology) {
    validate_for_run(params);
    const RngPolicy policy(params.seed);
    const int s = params.pop_size;
    const int k = params.budget;
    const Direction direction = params.direction;
    const int pn = effective_workers(topology, topology.pn, s);
    const int qn = topology.mode == Mode::MNM ? effective_workers(topology, topology.qn, s) : 1;
    const bool nested = topology.mode == Mode::MNM && qn > 1;
    const auto blocks = partition_rows(s, pn);

    RunResult result;
    result.topology = topology;

    auto to_coordinator = std::make_shared<Channel<WorkerMessage>>();
    std::vector<std::shared_ptr<Channel<WorkerMessage>>> inboxes;
    for (int w = 0; w < pn; ++w) inboxes.push_back(std::make_shared<Channel<WorkerMessage>>());

    auto worker_main = [&, nested, qn](int w) {
        const auto [lo, hi] = blocks[w];
        auto evaluate_block = [&](const PopulationMatrix& rows, std::uint64_t gen, WorkerMessage& out) {
            if (!nested || rows.rows == 0) {
                const double t0 = now_seconds();
                out.fitness = fitness.evaluate_batch(rows);
                out.compute_seconds = now_seconds() - t0;
                return;
            }
            ShardStats shard;
            out.fitness = eval_with_ephemeral_workers(fitness, rows, qn, gen, shard);
            out.compute_seconds = shard.compute;
            out.exchange_seconds = shard.exchange;
            out.lifecycle_seconds = shard.lifecycle;
        };

        // Init phase: build and evaluate the owned block (generation 0).
        {
            WorkerMessage out;
            out.kind = MessageKind::FitnessSlice;
            out.generation = 0;
            out.row_offset = lo;
            try {
                const double t0 = now_seconds();
                out.rows = init_population_block(pool.size(), lo, hi - lo, k, policy);
                const double init_seconds = now_seconds() - t0;
                evaluate_block(out.rows, 0, out);
                out.compute_seconds += init_seconds;
            } catch (...) {
                out.rows = PopulationMatrix(hi - lo, k);
                out.fitness.assign(static_cast<std::size_t>(hi - lo),
                                   std::numeric_limits<double>::quiet_NaN());
            }
            to_coordinator->send(std::move(out));
        }

        // Generation loop: receive the redistributed block, mutate and
        // evaluate it locally, send rows + fitness back.
        for (;;) {
            WorkerMessage in = inboxes[w]->receive();
            if (in.kind == MessageKind::Shutdown) return;
            WorkerMessage out;
            out.kind = MessageKind::FitnessSlice;
            out.generation = in.generation;
            out.row_offset = lo;
            try {
                const double t0 = now_seconds();
                out.rows = mutate_block(in.rows, lo, params.pm, pool.size(), policy, in.generation);
                const double mutate_seconds = now_seconds() - t0;
                evaluate_block(out.rows, in.generation, out);
                out.compute_seconds += mutate_seconds;
            } catch (...) {
                out.rows = PopulationMatrix(hi - lo, k);
                out.fitness.assign(static_cast<std::size_t>(hi - lo),
                                   std::numeric_limits<double>::quiet_NaN());
            }
            to_coordinator->send(std::move(out));
        }
    };

    // Joins the workers even if the coordinator throws (NaN fitness, ...).
    struct WorkerPool {
        std::vector<std::thread> threads;
        std::vector<std::shared_ptr<Channel<WorkerMessage>>>& inboxes;
        ~WorkerPool() {
            for (auto& inbox : inboxes) {
                WorkerMessage stop;
                stop.kind = MessageKind::Shutdown;
                inbox->send(std::move(stop));
            }
            for (auto& t : threads) t.join();
        }
    } workers{{}, inboxes};

    auto gather = [&](PopulationMatrix* rows_out, FitnessVector& fit_out, GatherInfo& info) {
        const double t0 = now_seconds();
        for (int i = 0; i < pn; ++i) {
            WorkerMessage msg = to_coordinator->receive();
            if (rows_out && msg.rows.rows > 0) rows_out->assign_rows(msg.row_offset, msg.rows);
            std::copy(msg.fitness.begin(), msg.fitness.end(), fit_out.begin() + msg.row_offset);
            const double busy = msg.compute_seconds + msg.exchange_seconds + msg.lifecycle_seconds;
            if (busy >= info.max_busy) {
                info.max_busy = busy;
                info.worker_exchange = msg.exchange_seconds;
                info.worker_lifecycle = msg.lifecycle_seconds;
            }
        }
        info.wait_seconds = now_seconds() - t0;
    };

    PopulationMatrix pop(s, k);
    FitnessVector fit(s, 0.0);
    for (std::uint64_t gen = 1; gen <= static_cast<std::uint64_t>(params.iterations); ++gen) {
        GenerationStats stats;
        const double t0 = now_seconds();
        if (gen == 1) {
            const double spawn_start = now_seconds();
            for (int w = 0; w < pn; ++w) workers.threads.emplace_back(worker_main, w);
            stats.lifecycle_seconds += now_seconds() - spawn_start;

            GatherInfo info;
            gather(&pop, fit, info);
            stats.messages += static_cast<std::uint64_t>(pn);
            stats.exchange_seconds += std::max(0.0, info.wait_seconds - info.max_busy) + info.worker_exchange;
            stats.lifecycle_seconds += info.worker_lifecycle;
            for (double f : fit)
                if (std::isnan(f)) throw Error("fitness evaluation failed during initialization");
        }

        PopulationMatrix crossed =
            is_eda_generation(params, gen)
                ? eda_sample(pop, s, pool.size(), policy, gen)
                : crossover(pop, roulette_select(pop, fit, direction, policy, gen), params.pc, policy, gen);

        const double send_start = now_seconds();
        for (int w = 0; w < pn; ++w) {
            WorkerMessage msg;
            msg.kind = MessageKind::EliteBroadcast;
            msg.generation = gen;
            msg.row_offset = blocks[w].first;
            msg.rows = crossed.slice(blocks[w].first, blocks[w].second);
            inboxes[w]->send(std::move(msg));
        }
        stats.exchange_seconds += now_seconds() - send_start;
        stats.messages += static_cast<std::uint64_t>(pn);

        PopulationMatrix mutated(s, k);
        FitnessVector fit_m(s, 0.0);
        GatherInfo info;
        gather(&mutated, fit_m, info);
        stats.messages += static_cast<std::uint64_t>(pn);
        stats.exchange_seconds += std::max(0.0, info.wait_seconds - info.max_busy) + info.worker_exchange;
        stats.lifecycle_seconds += info.worker_lifecycle;

        std::tie(pop, fit) = elitism(pop, mutated, fit, fit_m, direction);
        stats.wall_seconds = now_seconds() - t0;
        record_generation(result, fit, stats);
    }
    finalize_result(result, std::move(pop), std::move(fit));
    return result;
}

// ----------------------------------------------------------------- serial

}  // namespace

// Per-individual loop implementation: genes are crossed and mutated one
// position at a time and fitness is evaluated row by row. Because draws
// come from the same keyed streams, the result is identical to the batch
// modes; this path is the semantics oracle and the timing baseline.
RunResult run_serial(const GAParams& params, const GenePool& pool, const FitnessFunction& fitness) {
    validate_for_run(params);
    const RngPolicy policy(params.seed);
    const int s = params.pop_size;
    const int k = params.budget;
    const Direction direction = params.direction;

    RunResult result;
    result.topology = ModeTopology{Mode::Serial, 1, 1, {}};

    PopulationMatrix pop;
    FitnessVector fit(s, 0.0);
    for (std::uint64_t gen = 1; gen <= static_cast<std::uint64_t>(params.iterations); ++gen) {
        GenerationStats stats;
        const double t0 = now_seconds();
        if (gen == 1) {
            pop = init_population(pool.size(), s, k, policy);
            for (int i = 0; i < s; ++i) fit[i] = fitness.evaluate_one(pop.row(i));
        }

        PopulationMatrix crossed(s, k);
        if (is_eda_generation(params, gen)) {
            crossed = eda_sample(pop, s, pool.size(), policy, gen);
        } else {
            const std::vector<double> weights = selection_weights(fit, direction);
            std::vector<double> cumulative(s);
            double total = 0.0;
            for (int i = 0; i < s; ++i) {
                total += weights[i];
                cumulative[i] = total;
            }
            for (int i = 0; i < s; ++i) {
                RngStream select = policy.stream(gen, StreamRole::Select, static_cast<std::uint64_t>(i));
                const int partner = weighted_pick(cumulative, select.next_unit() * total);
                RngStream mask = policy.stream(gen, StreamRole::CrossoverMask, static_cast<std::uint64_t>(i));
                for (int j = 0; j < k; ++j)
                    crossed.at(i, j) = mask.next_bernoulli(params.pc) ? pop.at(partner, j) : pop.at(i, j);
            }
        }

        PopulationMatrix mutated(s, k);
        FitnessVector fit_m(s, 0.0);
        for (int i = 0; i < s; ++i) {
            RngStream mask = policy.stream(gen, StreamRole::MutationMask, static_cast<std::uint64_t>(i));
            RngStream index = policy.stream(gen, StreamRole::MutationIndex, static_cast<std::uint64_t>(i));
            for (int j = 0; j < k; ++j) {
                const bool flip = mask.next_bernoulli(params.pm);
                const std::int32_t fresh = static_cast<std::int32_t>(index.next_index(static_cast<std::uint32_t>(pool.size())));
                mutated.at(i, j) = flip ? fresh : crossed.at(i, j);
            }
            fit_m[i] = fitness.evaluate_one(mutated.row(i));
        }

        std::tie(pop, fit) = elitism(pop, mutated, fit, fit_m, direction);
        stats.wall_seconds = now_seconds() - t0;
        record_generation(result, fit, stats);
    }
    finalize_result(result, std::move(pop), std::move(fit));
    return result;
}

RunResult run_mode_s(const GAParams& params, const GenePool& pool, const FitnessFunction& fitness) {
    return run_single_lane(params, pool, fitness, ModeTopology{Mode::S, 1, 1, {}});
}

RunResult run_mode_sm(const GAParams& params, const GenePool& pool, const FitnessFunction& fitness,
                      int pn, std::optional<int> max_workers) {
    return run_single_lane(params, pool, fitness, ModeTopology{Mode::SM, pn, 1, max_workers});
}

RunResult run_mode_m(const GAParams& params, const GenePool& pool, const FitnessFunction& fitness,
                     int pn, std::optional<int> max_workers) {
    return run_multi_lane(params, pool, fitness, ModeTopology{Mode::M, pn, 1, max_workers});
}

RunResult run_mode_mnm(const GAParams& params, const GenePool& pool, const FitnessFunction& fitness,
                       int pn, int qn, std::optional<int> max_workers) {
    return run_multi_lane(params, pool, fitness, ModeTopology{Mode::MNM, pn, qn, max_workers});
}

RunResult run_ga(const GAParams& params, const GenePool& pool, const FitnessFunction& fitness,
                 const ModeTopology& topology) {
    topology.validate();
    switch (topology.mode) {
        case Mode::Serial: return run_serial(params, pool, fitness);
        case Mode::S: return run_mode_s(params, pool, fitness);
        case Mode::SM: return run_mode_sm(params, pool, fitness, topology.pn, topology.max_workers);
        case Mode::M: return run_mode_m(params, pool, fitness, topology.pn, topology.max_workers);
        case Mode::MNM: return run_mode_mnm(params, pool, fitness, topology.pn, topology.qn, topology.max_workers);
    }
    throw ConfigError("unknown mode");
}

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::Serial: return "serial";
        case Mode::S: return "s";
        case Mode::SM: return "sm";
        case Mode::M: return "m";
        case Mode::MNM: return "mnm";
    }
    return "?";
}

Mode mode_from_string(const std::string& name) {
    if (name == "serial") return Mode::Serial;
    if (name == "s") return Mode::S;
    if (name == "sm") return Mode::SM;
    if (name == "m") return Mode::M;
    if (name == "mnm") return Mode::MNM;
    throw ConfigError("unknown mode: " + name);
}

void ModeTopology::validate() const {
    if (pn < 1 || qn < 1) throw ConfigError("worker counts must be >= 1");
    if ((mode == Mode::Serial || mode == Mode::S) && (pn != 1 || qn != 1))
        throw ConfigError("serial and s modes fix pn = qn = 1");
    if (max_workers && *max_workers < 1) throw ConfigError("max_workers must be >= 1");
}

std::optional<int> env_worker_cap() {
    const char* raw = std::getenv("GAPA_MAX_WORKERS");
    if (!raw || !*raw) return {};
    char* end = nullptr;
    const long value = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || value < 1) {
        std::cerr << "warning: ignoring invalid GAPA_MAX_WORKERS value '" << raw << "'\n";
        return {};
    }
    return static_cast<int>(value);
}

int effective_workers(const ModeTopology& topology, int requested, int pop_size) {
    int cap = std::numeric_limits<int>::max();
    if (const auto env = env_worker_cap())
        cap = *env;
    else if (topology.max_workers)
        cap = *topology.max_workers;
    int workers = std::min(requested, cap);
    if (workers > pop_size) {
        std::cerr << "warning: worker count " << workers << " exceeds population size "
                  << pop_size << "; clamped\n";
        workers = pop_size;
    }
    return std::max(workers, 1);
}

std::vector<std::pair<int, int>> partition_rows(int pop_size, int pn) {
    const int block = (pop_size + pn - 1) / pn;
    std::vector<std::pair<int, int>> blocks;
    blocks.reserve(pn);
    for (int w = 0; w < pn; ++w) {
        const int lo = std::min(w * block, pop_size);
        const int hi = std::min(lo + block, pop_size);
        blocks.emplace_back(lo, hi);
    }
    return blocks;
}

std::string overhead_report(const RunResult& result) {
    std::ostringstream out;
    out << "gen  wall_s      compute_s   exchange_s  lifecycle_s messages\n";
    char line[160];
    for (std::size_t g = 0; g < result.history.size(); ++g) {
        const auto& h = result.history[g];
        std::snprintf(line, sizeof(line), "%-4zu %-11.6f %-11.6f %-11.6f %-11.6f %llu\n",
                      g + 1, h.wall_seconds, h.compute_seconds, h.exchange_seconds,
                      h.lifecycle_seconds, static_cast<unsigned long long>(h.messages));
        out << line;
    }
    return out.str();
}

}  // namespace gapa
