#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "genomap/harness.hpp"

namespace gh = genomap::harness;

namespace {

std::size_t env_workers() {
    const char* value = std::getenv("GENOMAP_WORKERS");
    if (value == nullptr || *value == '\0') return 0;
    const long n = std::strtol(value, nullptr, 10);
    if (n < 1) throw std::invalid_argument("GENOMAP_WORKERS must be a positive integer");
    return static_cast<std::size_t>(n);
}

int cmd_run(const std::string& config_path, const std::string& out_dir, std::size_t workers, bool full_scale) {
    gh::ExperimentSpec spec = gh::load_experiment(config_path);
    if (full_scale) {
        spec.budget_factor = 100000;
        spec.instances_per_cell = 50;
    }
    if (const std::size_t env = env_workers()) spec.workers = env;
    if (workers > 0) spec.workers = workers;

    const std::filesystem::path dir =
        out_dir.empty() ? std::filesystem::path(config_path).parent_path() / "results" : std::filesystem::path(out_dir);
    const auto rows = gh::run_experiment(spec);
    gh::write_results(dir, spec, rows);

    std::size_t failures = 0;
    for (const auto& r : rows) {
        if (!r.ok()) {
            ++failures;
            std::cerr << "run failed: " << r.algorithm << '/' << r.problem << '/' << r.mapping << " instance "
                      << r.instance << ": " << r.status << '\n';
        }
    }
    std::cout << rows.size() << " runs written to " << dir.string() << '\n';
    return failures == 0 ? 0 : 3;
}

int cmd_table(const std::string& results, const std::string& mode, const std::string& reference) {
    const auto rows = gh::load_results(results);
    gh::TableMode table_mode = gh::TableMode::benchmark;
    if (mode.empty()) {
        if (!rows.empty() && rows.front().kind != gh::ProblemKind::benchmark) table_mode = gh::TableMode::pm;
    } else if (mode == "pm") {
        table_mode = gh::TableMode::pm;
    }
    std::cout << gh::format_table(gh::render_table(rows, table_mode, reference));
    return 0;
}

int cmd_ecdf(const std::string& results, const std::string& group, const std::string& out_path) {
    std::optional<genomap::FunctionCategory> category;
    if (group != "all") category = genomap::parse_category(group);
    const auto series = gh::export_ecdf(gh::load_results(results), category);
    if (out_path.empty()) {
        gh::write_ecdf_csv(std::cout, series);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        gh::write_ecdf_csv(out, series);
    }
    return 0;
}

int cmd_seed_info(const std::string& results) {
    const std::filesystem::path path(results);
    const std::filesystem::path dir = std::filesystem::is_directory(path) ? path : path.parent_path();
    std::ifstream manifest_in(dir / "manifest.json");
    if (manifest_in) {
        const auto manifest = nlohmann::json::parse(manifest_in);
        std::cout << "master_seed " << manifest.at("master_seed").get<std::uint64_t>() << '\n'
                  << "generator " << manifest.at("generator").get<std::string>() << '\n'
                  << "derivation " << manifest.at("seed_derivation").get<std::string>() << '\n';
    }
    std::cout << "algorithm,problem,mapping,instance,seed\n";
    for (const auto& r : gh::load_results(results)) {
        std::cout << r.algorithm << ',' << r.problem << ',' << r.mapping << ',' << r.instance << ',' << r.seed << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"genomap: genotype-phenotype mapping experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::size_t workers = 0;
    bool full_scale = false;
    auto* run = app.add_subcommand("run", "Execute an experiment config and store runs.csv + manifest.json");
    run->add_option("config", config_path, "Experiment config (JSON)")->required();
    run->add_option("-o,--out", out_dir, "Results directory (default: results/ next to the config)");
    run->add_option("-w,--workers", workers, "Parallel runs (overrides GENOMAP_WORKERS and the config)");
    run->add_flag("--full-scale", full_scale, "Budget factor 100000 and 50 instances per cell");

    std::string results, mode, reference = "def";
    auto* table = app.add_subcommand("table", "Render a comparison table from stored results");
    table->add_option("results", results, "Results directory or runs.csv")->required();
    table->add_option("--mode", mode, "Cell format")->check(CLI::IsMember({"benchmark", "pm"}));
    table->add_option("--reference", reference, "Reference mapping column");

    std::string group, ecdf_out;
    auto* ecdf = app.add_subcommand("ecdf", "Export ECDF curves as CSV");
    ecdf->add_option("results", results, "Results directory or runs.csv")->required();
    ecdf->add_option("--group", group, "Function category or 'all'")->required();
    ecdf->add_option("-o,--out", ecdf_out, "Output CSV (default: stdout)");

    auto* seed_info = app.add_subcommand("seed-info", "Print master seed and per-run seeds");
    seed_info->add_option("results", results, "Results directory or runs.csv")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, out_dir, workers, full_scale);
        if (table->parsed()) return cmd_table(results, mode, reference);
        if (ecdf->parsed()) return cmd_ecdf(results, group, ecdf_out);
        if (seed_info->parsed()) return cmd_seed_info(results);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
