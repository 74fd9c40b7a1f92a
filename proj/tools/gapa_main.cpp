#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gapa/bench.hpp"
#include "gapa/error.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDataset = 3;

std::vector<int> parse_values(const std::string& list) {
    std::vector<int> values;
    std::stringstream in(list);
    std::string token;
    while (std::getline(in, token, ',')) {
        try {
            values.push_back(std::stoi(token));
        } catch (const std::exception&) {
            throw gapa::ConfigError("invalid sweep value: '" + token + "'");
        }
    }
    return values;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw gapa::ConfigError("cannot open file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parallel genetic-algorithm benchmark runner for graph perturbation tasks"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "Run the experiment described by a JSON config");
    run_cmd->add_option("config", config_path, "JSON config file")->required();

    std::string sweep_config, sweep_axis, sweep_values;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run one batch per value of a swept parameter");
    sweep_cmd->add_option("config", sweep_config, "JSON config file")->required();
    sweep_cmd->add_option("--axis", sweep_axis, "pop_size or pn")->required();
    sweep_cmd->add_option("--values", sweep_values, "comma-separated ascending values")->required();

    std::string rows_path, format = "table";
    auto* report_cmd = app.add_subcommand("report", "Reformat a rows CSV file");
    report_cmd->add_option("rows", rows_path, "rows CSV file")->required();
    report_cmd->add_option("--format", format, "csv or table")->capture_default_str();

    try {
        app.parse(argc, argv);

        if (*run_cmd) {
            const auto cfg = gapa::bench::load_config_file(config_path);
            const auto rows = gapa::bench::run_experiment(cfg);
            std::cout << gapa::bench::report(rows, gapa::bench::ReportFormat::AlignedTable);
            if (!cfg.output.empty()) std::cout << "rows written to " << cfg.output << "\n";
        } else if (*sweep_cmd) {
            const auto cfg = gapa::bench::load_config_file(sweep_config);
            const auto rows = gapa::bench::sweep(cfg, gapa::bench::axis_from_string(sweep_axis),
                                                 parse_values(sweep_values));
            std::cout << gapa::bench::report(rows, gapa::bench::ReportFormat::AlignedTable);
            if (!cfg.output.empty()) std::cout << "rows written to " << cfg.output << "\n";
        } else if (*report_cmd) {
            const auto rows = gapa::bench::parse_rows_csv(read_file(rows_path));
            if (format == "csv")
                std::cout << gapa::bench::report(rows, gapa::bench::ReportFormat::Csv);
            else if (format == "table")
                std::cout << gapa::bench::report(rows, gapa::bench::ReportFormat::AlignedTable);
            else
                throw gapa::ConfigError("unknown report format: " + format);
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitConfig : kExitOk;
    } catch (const gapa::DatasetError& e) {
        std::cerr << "dataset error: " << e.what() << "\n";
        return kExitDataset;
    } catch (const gapa::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const gapa::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitDataset;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
