#include "gapa/bench.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "gapa/community.hpp"
#include "gapa/components.hpp"
#include "gapa/error.hpp"
#include "gapa/fitness.hpp"
#include "gapa/graph.hpp"
#include "gapa/link_prediction.hpp"

namespace gapa::bench {

using nlohmann::json;

std::string to_string(Task task) {
    switch (task) {
        case Task::CndSixDst: return "cnd-sixdst";
        case Task::CndPc: return "cnd-pc";
        case Task::CdaModularity: return "cda-modularity";
        case Task::LpaSimilarity: return "lpa-similarity";
    }
    return "?";
}

Task task_from_string(const std::string& name) {
    if (name == "cnd-sixdst") return Task::CndSixDst;
    if (name == "cnd-pc") return Task::CndPc;
    if (name == "cda-modularity") return Task::CdaModularity;
    if (name == "lpa-similarity") return Task::LpaSimilarity;
    throw ConfigError("unknown task: " + name);
}

void ExperimentConfig::validate() const {
    if (dataset.empty()) throw ConfigError("config: dataset path is required");
    if (repetitions < 1) throw ConfigError("config: repetitions must be >= 1");
    if (test_fraction <= 0.0 || test_fraction > 0.5)
        throw ConfigError("config: test_fraction must be in (0, 0.5]");
    if (perturbation_rate <= 0.0 || perturbation_rate > 1.0)
        throw ConfigError("config: perturbation_rate must be in (0, 1]");
    params.validate();
    if (params.iterations < 1) throw ConfigError("config: iterations must be >= 1");
    topology.validate();

    switch (task) {
        case Task::CndSixDst:
        case Task::CndPc:
            if (pool_kind != PoolKind::NodeRemoval)
                throw ConfigError("config: cnd-* tasks require a node-removal pool");
            break;
        case Task::CdaModularity:
            if (pool_kind == PoolKind::NodeRemoval)
                throw ConfigError("config: cda-modularity requires an edge-removal or edge-addition pool");
            break;
        case Task::LpaSimilarity:
            if (pool_kind != PoolKind::EdgeRemoval)
                throw ConfigError("config: lpa-similarity requires an edge-removal pool");
            break;
    }
}

ExperimentConfig preset(const std::string& algorithm) {
    ExperimentConfig cfg;
    cfg.algorithm = algorithm;
    cfg.params.direction = Direction::Minimize;
    if (algorithm == "qattack") {
        cfg.task = Task::CdaModularity;
        cfg.pool_kind = PoolKind::EdgeAddition;
        cfg.params.pc = 0.8;
        cfg.params.pm = 0.1;
        cfg.params.iterations = 1500;
        cfg.params.pop_size = 100;
        cfg.perturbation_rate = 0.1;
    } else if (algorithm == "cda-eda") {
        cfg.task = Task::CdaModularity;
        cfg.pool_kind = PoolKind::EdgeAddition;
        cfg.params.pc = 0.6;
        cfg.params.pm = 0.2;
        cfg.params.iterations = 1500;
        cfg.params.pop_size = 100;
        cfg.perturbation_rate = 0.1;
    } else if (algorithm == "sixdst") {
        cfg.task = Task::CndSixDst;
        cfg.pool_kind = PoolKind::NodeRemoval;
        cfg.params.pc = 0.5;
        cfg.params.pm = 0.3;
        cfg.params.iterations = 5000;
        cfg.params.pop_size = 80;
        cfg.perturbation_rate = 0.1;
    } else if (algorithm == "cutoff-pc") {
        cfg.task = Task::CndPc;
        cfg.pool_kind = PoolKind::NodeRemoval;
        cfg.params.pc = 0.6;
        cfg.params.pm = 0.2;
        cfg.params.iterations = 5000;
        cfg.params.pop_size = 80;
        cfg.perturbation_rate = 0.1;
    } else if (algorithm == "lpa-ga") {
        cfg.task = Task::LpaSimilarity;
        cfg.pool_kind = PoolKind::EdgeRemoval;
        cfg.params.pc = 0.7;
        cfg.params.pm = 0.1;
        cfg.params.iterations = 500;
        cfg.params.pop_size = 50;
        cfg.perturbation_rate = 0.1;
    } else if (algorithm == "lpa-eda") {
        // Sample-from-elite reproduction replaces selection and crossover
        // every generation; pc is unused.
        cfg.task = Task::LpaSimilarity;
        cfg.pool_kind = PoolKind::EdgeRemoval;
        cfg.params.pc = 0.0;
        cfg.params.pm = 0.1;
        cfg.params.iterations = 500;
        cfg.params.pop_size = 50;
        cfg.params.eda_interval = 1;
        cfg.perturbation_rate = 0.1;
    } else {
        throw ConfigError("unknown algorithm preset: " + algorithm);
    }
    return cfg;
}

namespace {

PoolKind default_pool_kind(Task task) {
    switch (task) {
        case Task::CndSixDst:
        case Task::CndPc: return PoolKind::NodeRemoval;
        case Task::CdaModularity: return PoolKind::EdgeAddition;
        case Task::LpaSimilarity: return PoolKind::EdgeRemoval;
    }
    return PoolKind::EdgeRemoval;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");

    static const char* known[] = {
        "task", "dataset", "algorithm", "pool", "pc", "pm", "pop_size", "iterations",
        "seed", "eda_interval", "perturbation_rate", "mode", "pn", "qn", "max_workers",
        "repetitions", "output", "test_fraction", "ground_truth", "fast_closure"};
    for (const auto& [key, value] : doc.items()) {
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known))
            throw ConfigError("config: unknown key '" + key + "'");
    }

    ExperimentConfig cfg;
    bool pool_given = false;
    try {
        if (doc.contains("algorithm"))
            cfg = preset(doc["algorithm"].get<std::string>());
        else if (doc.contains("task"))
            cfg.params.direction = Direction::Minimize;
        else
            throw ConfigError("config: either 'algorithm' or 'task' is required");

        if (doc.contains("task")) cfg.task = task_from_string(doc["task"].get<std::string>());
        if (doc.contains("dataset")) cfg.dataset = doc["dataset"].get<std::string>();
        if (doc.contains("pool")) {
            cfg.pool_kind = pool_kind_from_string(doc["pool"].get<std::string>());
            pool_given = true;
        }
        if (!doc.contains("algorithm") && !pool_given) cfg.pool_kind = default_pool_kind(cfg.task);
        if (doc.contains("pc")) cfg.params.pc = doc["pc"].get<double>();
        if (doc.contains("pm")) cfg.params.pm = doc["pm"].get<double>();
        if (doc.contains("pop_size")) cfg.params.pop_size = doc["pop_size"].get<int>();
        if (doc.contains("iterations")) cfg.params.iterations = doc["iterations"].get<int>();
        if (doc.contains("seed")) cfg.params.seed = doc["seed"].get<std::uint64_t>();
        if (doc.contains("eda_interval")) cfg.params.eda_interval = doc["eda_interval"].get<int>();
        if (doc.contains("perturbation_rate")) cfg.perturbation_rate = doc["perturbation_rate"].get<double>();
        if (doc.contains("mode")) cfg.topology.mode = mode_from_string(doc["mode"].get<std::string>());
        if (doc.contains("pn")) cfg.topology.pn = doc["pn"].get<int>();
        if (doc.contains("qn")) cfg.topology.qn = doc["qn"].get<int>();
        if (doc.contains("max_workers")) cfg.topology.max_workers = doc["max_workers"].get<int>();
        if (doc.contains("repetitions")) cfg.repetitions = doc["repetitions"].get<int>();
        if (doc.contains("output")) cfg.output = doc["output"].get<std::string>();
        if (doc.contains("test_fraction")) cfg.test_fraction = doc["test_fraction"].get<double>();
        if (doc.contains("ground_truth")) cfg.ground_truth = doc["ground_truth"].get<std::string>();
        if (doc.contains("fast_closure")) cfg.fast_closure = doc["fast_closure"].get<bool>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

namespace {

struct GraphMetrics {
    double mcn = 0.0;
    double pc = 0.0;
};

GraphMetrics component_metrics(const BitMatrix& adjacency) {
    const Partition parts = connected_components(adjacency);
    return {static_cast<double>(largest_component_size(parts)),
            static_cast<double>(pairwise_connectivity(parts))};
}

ResultRow base_row(const ExperimentConfig& cfg, const GAParams& params) {
    ResultRow row;
    row.task = to_string(cfg.task);
    row.algorithm = cfg.algorithm.empty() ? "custom" : cfg.algorithm;
    row.dataset = cfg.dataset;
    row.mode = to_string(cfg.topology.mode);
    row.pn = cfg.topology.pn;
    row.qn = cfg.topology.qn;
    row.pop_size = params.pop_size;
    row.iterations = params.iterations;
    row.seed = params.seed;
    return row;
}

ResultRow run_once(const ExperimentConfig& cfg, const Graph& graph, std::uint64_t seed) {
    GAParams params = cfg.params;
    params.seed = seed;
    params.direction = Direction::Minimize;  // all four tasks minimize

    ResultRow row;
    switch (cfg.task) {
        case Task::CndSixDst:
        case Task::CndPc: {
            const GenePool pool = build_gene_pool(graph, cfg.pool_kind);
            params.budget = perturbation_budget(graph, cfg.pool_kind, cfg.perturbation_rate);
            const BitMatrix adjacency = graph.adjacency();
            std::unique_ptr<FitnessFunction> objective;
            if (cfg.task == Task::CndSixDst)
                objective = std::make_unique<SixDstObjective>(
                    adjacency, pool, cfg.fast_closure ? ClosurePolicy::SixDegrees : ClosurePolicy::Exact);
            else
                objective = std::make_unique<PairwiseConnectivityObjective>(adjacency, pool);

            const RunResult result = run_ga(params, pool, *objective, cfg.topology);
            row = base_row(cfg, params);
            row.wall_time_s = result.total_wall_seconds;

            const GraphMetrics before = component_metrics(adjacency);
            const GraphMetrics after =
                component_metrics(apply_perturbation(adjacency, pool, result.best_individual));
            row.mcn_unattacked = before.mcn;
            row.mcn_attacked = after.mcn;
            row.pc_unattacked = before.pc;
            row.pc_attacked = after.pc;
            break;
        }
        case Task::CdaModularity: {
            const GenePool pool = build_gene_pool(graph, cfg.pool_kind);
            params.budget = perturbation_budget(graph, cfg.pool_kind, cfg.perturbation_rate);
            const BitMatrix adjacency = graph.adjacency();
            const ModularityAttackObjective objective(adjacency, pool);

            const RunResult result = run_ga(params, pool, objective, cfg.topology);
            row = base_row(cfg, params);
            row.wall_time_s = result.total_wall_seconds;

            const CommunityPartition before = detect_communities(adjacency);
            const BitMatrix attacked = apply_perturbation(adjacency, pool, result.best_individual);
            const CommunityPartition after = detect_communities(attacked);
            row.q_unattacked = modularity(adjacency, before);
            row.q_attacked = attacked.popcount() == 0 ? -0.5 : modularity(attacked, after);

            CommunityPartition reference = before;
            if (!cfg.ground_truth.empty())
                reference = CommunityPartition{load_community_file(cfg.ground_truth, graph)};
            row.nmi_unattacked = nmi(before, reference);
            row.nmi_attacked = nmi(after, reference);
            break;
        }
        case Task::LpaSimilarity: {
            const LinkPredictionSplit split = build_lp_split(graph, cfg.test_fraction, seed);
            const GenePool pool = build_gene_pool(split.train, PoolKind::EdgeRemoval);
            params.budget = perturbation_budget(split.train, PoolKind::EdgeRemoval, cfg.perturbation_rate);
            const LinkPredictionAttackObjective objective(split, pool);

            const RunResult result = run_ga(params, pool, objective, cfg.topology);
            row = base_row(cfg, params);
            row.wall_time_s = result.total_wall_seconds;

            const BitMatrix train = split.train.adjacency();
            const LpMetrics before = evaluate_ra_predictor(split, train);
            const LpMetrics after = evaluate_ra_predictor(
                split, apply_perturbation(train, pool, result.best_individual));
            row.auc_unattacked = before.auc;
            row.auc_attacked = after.auc;
            row.precision_unattacked = before.precision;
            row.precision_attacked = after.precision;
            break;
        }
    }
    return row;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
    config.validate();
    const Graph graph = load_edge_list_file(config.dataset).graph;
    if (!config.ground_truth.empty()) load_community_file(config.ground_truth, graph);  // fail early

    std::vector<ResultRow> rows;
    rows.reserve(config.repetitions);
    for (int rep = 0; rep < config.repetitions; ++rep)
        rows.push_back(run_once(config, graph, config.params.seed + static_cast<std::uint64_t>(rep)));

    if (!config.output.empty()) {
        std::ofstream out(config.output);
        if (!out) throw ConfigError("cannot open output file: " + config.output);
        out << report(rows, ReportFormat::Csv);
    }
    return rows;
}

SweepAxis axis_from_string(const std::string& name) {
    if (name == "pop_size") return SweepAxis::PopSize;
    if (name == "pn") return SweepAxis::Pn;
    throw ConfigError("unknown sweep axis: " + name);
}

std::vector<ResultRow> sweep(const ExperimentConfig& config, SweepAxis axis,
                             const std::vector<int>& values) {
    if (values.empty()) throw ConfigError("sweep: values must be nonempty");
    if (!std::is_sorted(values.begin(), values.end()) ||
        std::adjacent_find(values.begin(), values.end()) != values.end())
        throw ConfigError("sweep: values must be strictly ascending");

    std::vector<ResultRow> all;
    for (int value : values) {
        ExperimentConfig cfg = config;
        cfg.output.clear();
        if (axis == SweepAxis::PopSize)
            cfg.params.pop_size = value;
        else
            cfg.topology.pn = value;
        const auto rows = run_experiment(cfg);
        all.insert(all.end(), rows.begin(), rows.end());
    }
    if (!config.output.empty()) {
        std::ofstream out(config.output);
        if (!out) throw ConfigError("cannot open output file: " + config.output);
        out << report(all, ReportFormat::Csv);
    }
    return all;
}

namespace {

constexpr const char* kHeader[] = {
    "task", "algorithm", "dataset", "mode", "pn", "qn", "pop_size", "iterations", "seed",
    "wall_time_s", "q_unattacked", "q_attacked", "nmi_unattacked", "nmi_attacked",
    "mcn_unattacked", "mcn_attacked", "pc_unattacked", "pc_attacked",
    "auc_unattacked", "auc_attacked", "precision_unattacked", "precision_attacked"};
constexpr int kWallColumn = 9;

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string format_optional(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

std::vector<std::string> row_cells(const ResultRow& r) {
    return {r.task,
            r.algorithm,
            r.dataset,
            r.mode,
            std::to_string(r.pn),
            std::to_string(r.qn),
            std::to_string(r.pop_size),
            std::to_string(r.iterations),
            std::to_string(r.seed),
            format_double(r.wall_time_s),
            format_optional(r.q_unattacked),
            format_optional(r.q_attacked),
            format_optional(r.nmi_unattacked),
            format_optional(r.nmi_attacked),
            format_optional(r.mcn_unattacked),
            format_optional(r.mcn_attacked),
            format_optional(r.pc_unattacked),
            format_optional(r.pc_attacked),
            format_optional(r.auc_unattacked),
            format_optional(r.auc_attacked),
            format_optional(r.precision_unattacked),
            format_optional(r.precision_attacked)};
}

double parse_double_cell(const std::string& cell, int line_no) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw ParseError("rows CSV line " + std::to_string(line_no) + ": bad number '" + cell + "'");
    return value;
}

std::optional<double> parse_optional_cell(const std::string& cell, int line_no) {
    if (cell.empty()) return {};
    return parse_double_cell(cell, line_no);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else {
            cell.push_back(c);
        }
    }
    cells.push_back(std::move(cell));
    return cells;
}

}  // namespace

std::string report(const std::vector<ResultRow>& rows, ReportFormat format) {
    const int columns = static_cast<int>(std::size(kHeader));
    std::vector<std::vector<std::string>> table;
    table.reserve(rows.size() + 1);
    table.emplace_back(std::begin(kHeader), std::end(kHeader));
    for (const auto& r : rows) table.push_back(row_cells(r));

    std::ostringstream out;
    if (format == ReportFormat::Csv) {
        for (const auto& cells : table) {
            for (int c = 0; c < columns; ++c) out << (c ? "," : "") << cells[c];
            out << "\n";
        }
        return out.str();
    }

    std::vector<std::size_t> widths(columns, 0);
    for (const auto& cells : table)
        for (int c = 0; c < columns; ++c) widths[c] = std::max(widths[c], cells[c].size());
    for (const auto& cells : table) {
        for (int c = 0; c < columns; ++c) {
            if (c) out << "  ";
            out << cells[c] << std::string(widths[c] - cells[c].size(), ' ');
        }
        out << "\n";
    }
    return out.str();
}

std::vector<ResultRow> parse_rows_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("rows CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        const auto cells = split_csv_line(line);
        if (cells.size() != std::size(kHeader)) throw ParseError("rows CSV: wrong column count in header");
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (cells[c] != kHeader[c]) throw ParseError("rows CSV: unexpected header column '" + cells[c] + "'");
    }

    std::vector<ResultRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != std::size(kHeader))
            throw ParseError("rows CSV line " + std::to_string(line_no) + ": wrong column count");
        ResultRow r;
        r.task = cells[0];
        r.algorithm = cells[1];
        r.dataset = cells[2];
        r.mode = cells[3];
        r.pn = static_cast<int>(parse_double_cell(cells[4], line_no));
        r.qn = static_cast<int>(parse_double_cell(cells[5], line_no));
        r.pop_size = static_cast<int>(parse_double_cell(cells[6], line_no));
        r.iterations = static_cast<int>(parse_double_cell(cells[7], line_no));
        r.seed = static_cast<std::uint64_t>(parse_double_cell(cells[8], line_no));
        r.wall_time_s = parse_double_cell(cells[9], line_no);
        r.q_unattacked = parse_optional_cell(cells[10], line_no);
        r.q_attacked = parse_optional_cell(cells[11], line_no);
        r.nmi_unattacked = parse_optional_cell(cells[12], line_no);
        r.nmi_attacked = parse_optional_cell(cells[13], line_no);
        r.mcn_unattacked = parse_optional_cell(cells[14], line_no);
        r.mcn_attacked = parse_optional_cell(cells[15], line_no);
        r.pc_unattacked = parse_optional_cell(cells[16], line_no);
        r.pc_attacked = parse_optional_cell(cells[17], line_no);
        r.auc_unattacked = parse_optional_cell(cells[18], line_no);
        r.auc_attacked = parse_optional_cell(cells[19], line_no);
        r.precision_unattacked = parse_optional_cell(cells[20], line_no);
        r.precision_attacked = parse_optional_cell(cells[21], line_no);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string csv_without_wall_time(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::ostringstream out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto cells = split_csv_line(line);
        if (!header && static_cast<int>(cells.size()) > kWallColumn) cells[kWallColumn].clear();
        header = false;
        for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << cells[c];
        out << "\n";
    }
    return out.str();
}

}  // namespace gapa::bench
