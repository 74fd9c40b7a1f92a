#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gapa/ga_ops.hpp"
#include "gapa/gene_pool.hpp"
#include "gapa/modes.hpp"

namespace gapa::bench {

enum class Task { CndSixDst, CndPc, CdaModularity, LpaSimilarity };

std::string to_string(Task task);
Task task_from_string(const std::string& name);

// One experiment: a dataset, a task objective, GA parameters and an
// execution topology. Built-in algorithm presets fill the GA defaults so
// a config only needs task + dataset.
struct ExperimentConfig {
    Task task = Task::CdaModularity;
    std::string dataset;
    std::string algorithm;  // preset name, optional
    PoolKind pool_kind = PoolKind::EdgeRemoval;
    GAParams params;
    double perturbation_rate = 0.1;
    ModeTopology topology;
    int repetitions = 1;
    std::string output;               // CSV path, optional
    double test_fraction = 0.1;       // LPA split
    std::string ground_truth;         // optional community file for NMI
    bool fast_closure = false;        // SixDST six-degrees shortcut

    void validate() const;  // throws ConfigError
};

// Algorithm presets addressable by name: qattack, cda-eda, sixdst,
// cutoff-pc, lpa-ga, lpa-eda.
ExperimentConfig preset(const std::string& algorithm);

// Parses a JSON config document / file into a validated config.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

// One CSV row per (config, repetition). Metric fields are task-dependent
// and always carry the unattacked baseline next to the attacked value.
struct ResultRow {
    std::string task;
    std::string algorithm;
    std::string dataset;
    std::string mode;
    int pn = 1;
    int qn = 1;
    int pop_size = 0;
    int iterations = 0;
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;
    std::optional<double> q_unattacked, q_attacked;
    std::optional<double> nmi_unattacked, nmi_attacked;
    std::optional<double> mcn_unattacked, mcn_attacked;
    std::optional<double> pc_unattacked, pc_attacked;
    std::optional<double> auc_unattacked, auc_attacked;
    std::optional<double> precision_unattacked, precision_attacked;

    bool operator==(const ResultRow&) const = default;
};

// Runs `repetitions` repetitions with seeds seed, seed+1, ... and returns
// one row each. Throws ConfigError / DatasetError before any run starts.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

enum class SweepAxis { PopSize, Pn };
SweepAxis axis_from_string(const std::string& name);

// One run batch per value (ascending, nonempty); rows concatenated.
std::vector<ResultRow> sweep(const ExperimentConfig& config, SweepAxis axis,
                             const std::vector<int>& values);

enum class ReportFormat { Csv, AlignedTable };

std::string report(const std::vector<ResultRow>& rows, ReportFormat format);
std::vector<ResultRow> parse_rows_csv(const std::string& text);
// CSV with the wall_time_s column blanked; the determinism contract is
// byte-identity of this form.
std::string csv_without_wall_time(const std::string& csv_text);

}  // namespace gapa::bench
