#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gapa/fitness.hpp"
#include "gapa/ga_ops.hpp"
#include "gapa/gene_pool.hpp"
#include "gapa/population.hpp"

namespace gapa {

// Execution topologies. All of them compute the same run bit-for-bit
// under a fixed seed; they differ only in where the work happens.
//   Serial: per-individual loops on one lane (baseline and oracle).
//   S:      whole-population batch operators on one lane.
//   SM:     batch genetics on the coordinator, pn ephemeral fitness
//           workers spawned every generation.
//   M:      pn persistent workers own row blocks; init, mutation and
//           fitness run locally, global operators on the coordinator.
//   MNM:    M plus qn nested ephemeral fitness workers per block.
enum class Mode { Serial, S, SM, M, MNM };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

struct ModeTopology {
    Mode mode = Mode::S;
    int pn = 1;  // outer worker count
    int qn = 1;  // nested fitness shards (SM uses pn, MNM uses qn)
    std::optional<int> max_workers;  // config cap; GAPA_MAX_WORKERS overrides

    void validate() const;  // throws ConfigError
};

// Parsed GAPA_MAX_WORKERS, if set to a positive integer.
std::optional<int> env_worker_cap();
// Requested count clamped by the population size and the worker cap;
// warns on stderr when the clamp changes the value.
int effective_workers(const ModeTopology& topology, int requested, int pop_size);

// Contiguous row blocks of size ceil(s/pn); trailing blocks may be short
// or empty. Concatenated they cover [0, s) exactly once.
std::vector<std::pair<int, int>> partition_rows(int pop_size, int pn);

enum class MessageKind { PopulationSlice, FitnessSlice, EliteBroadcast, Shutdown };

struct WorkerMessage {
    MessageKind kind = MessageKind::Shutdown;
    std::uint64_t generation = 0;
    int row_offset = 0;
    PopulationMatrix rows;
    FitnessVector fitness;
    // Worker-side time decomposition, self-reported for the overhead table.
    double compute_seconds = 0.0;
    double exchange_seconds = 0.0;
    double lifecycle_seconds = 0.0;
};

struct GenerationStats {
    double best = 0.0;
    double mean = 0.0;
    double wall_seconds = 0.0;
    double compute_seconds = 0.0;
    double exchange_seconds = 0.0;
    double lifecycle_seconds = 0.0;
    std::uint64_t messages = 0;
};

struct RunResult {
    ModeTopology topology;
    PopulationMatrix final_population;  // sorted best-first by elitism
    FitnessVector final_fitness;
    std::vector<std::int32_t> best_individual;
    double best_fitness = 0.0;
    std::vector<GenerationStats> history;  // one row per generation
    std::uint64_t fitness_batch_calls = 0;
    double total_wall_seconds = 0.0;  // generation loop only
};

RunResult run_serial(const GAParams& params, const GenePool& pool, const FitnessFunction& fitness);
RunResult run_mode_s(const GAParams& params, const GenePool& pool, const FitnessFunction& fitness);
RunResult run_mode_sm(const GAParams& params, const GenePool& pool, const FitnessFunction& fitness,
                      int pn, std::optional<int> max_workers = {});
RunResult run_mode_m(const GAParams& params, const GenePool& pool, const FitnessFunction& fitness,
                     int pn, std::optional<int> max_workers = {});
RunResult run_mode_mnm(const GAParams& params, const GenePool& pool, const FitnessFunction& fitness,
                       int pn, int qn, std::optional<int> max_workers = {});

// Front door: dispatches on topology.mode.
RunResult run_ga(const GAParams& params, const GenePool& pool, const FitnessFunction& fitness,
                 const ModeTopology& topology);

// Aligned per-generation table of {wall, compute, exchange, lifecycle,
// messages}; the three time columns sum to wall up to measurement jitter.
std::string overhead_report(const RunResult& result);

}  // namespace gapa
