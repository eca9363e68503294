#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "genomap/benchmark.hpp"
#include "genomap/evolvers.hpp"
#include "genomap/mapping.hpp"
#include "genomap/neural.hpp"
#include "genomap/stats.hpp"

namespace genomap::harness {

/// Invalid experiment configuration; the message starts with the offending key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ProblemKind { benchmark, puf, nn };

std::string_view kind_name(ProblemKind kind);

/// One row of the experiment matrix.
struct ProblemSpec {
    ProblemKind kind = ProblemKind::benchmark;
    FunctionId function = FunctionId::sphere;  // benchmark
    std::size_t dimension = 2;                 // benchmark
    std::size_t stages = 32;                   // puf
    std::size_t crps = 2000;                   // puf
    nn::Task task = nn::Task::f1;              // nn
    nn::Architecture architecture{1, 5, 3, 1}; // nn
    std::optional<std::uint64_t> budget;       // overrides dimension x budget_factor

    std::string label() const;
    std::string category() const;
    /// Phenotype length.
    std::size_t phenotype_length() const;
    std::uint64_t evaluation_budget(std::uint64_t budget_factor) const;
};

struct ExperimentSpec {
    std::vector<ProblemSpec> problems;
    std::vector<MappingSpec> mappings;
    std::vector<AlgorithmConfig> algorithms;
    std::size_t instances_per_cell = 30;
    std::uint64_t budget_factor = 10000;
    std::uint64_t master_seed = 1;
    std::size_t workers = 1;

    std::size_t cell_count() const { return problems.size() * algorithms.size() * mappings.size(); }
};

/// Parses the JSON config (sections: problems, mappings, algorithms, execution).
ExperimentSpec parse_experiment(const nlohmann::json& config);
ExperimentSpec load_experiment(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentSpec& spec);

/// One persisted run: cell identifiers plus the outcome.
struct RunRow {
    std::string problem;
    ProblemKind kind = ProblemKind::benchmark;
    std::string category;
    std::size_t dimension = 0;
    std::string algorithm;
    std::string mapping;
    std::size_t instance = 0;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    std::uint64_t evaluations = 0;
    std::uint64_t counter = 0;  // the problem's own evaluation counter
    double final_fitness = 0.0;
    bool hit = false;
    std::string status = "ok";  // "ok" or "failed: <reason>"
    stats::TargetHits first_hits{};

    bool ok() const { return status == "ok"; }
};

/// Seed of the problem instance shared by every mapping/algorithm of a row.
std::uint64_t instance_seed(std::uint64_t master_seed, std::size_t problem_index, std::size_t instance);
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t problem_index, std::size_t algorithm_index,
                       std::size_t mapping_index, std::size_t instance);

std::unique_ptr<Problem> make_problem(const ProblemSpec& problem, std::uint64_t master_seed,
                                      std::size_t problem_index, std::size_t instance);

using ProblemFactory = std::function<std::unique_ptr<Problem>(const ProblemSpec&, std::uint64_t master_seed,
                                                              std::size_t problem_index, std::size_t instance)>;

/// Runs the whole matrix, `workers` runs at a time. Output order is
/// problem, algorithm, mapping, instance regardless of completion order.
/// A failing run yields a row with a failure status; the others still run.
std::vector<RunRow> run_experiment(const ExperimentSpec& spec, const ProblemFactory& factory = make_problem);

void write_runs_csv(std::ostream& out, const std::vector<RunRow>& rows);
std::vector<RunRow> read_runs_csv(std::istream& in);

/// Writes runs.csv and manifest.json into `dir`.
void write_results(const std::filesystem::path& dir, const ExperimentSpec& spec, const std::vector<RunRow>& rows);
/// Accepts a results directory or a runs.csv path.
std::vector<RunRow> load_results(const std::filesystem::path& path);

enum class TableMode { benchmark, pm };

struct Table {
    std::vector<std::string> columns;  // mapping codes, reference first
    struct Row {
        std::string label;
        std::vector<std::string> cells;
    };
    std::vector<Row> rows;
};

/// One row per problem/algorithm, one column per mapping. Candidate cells
/// carry the verdict against `reference`.
Table render_table(const std::vector<RunRow>& rows, TableMode mode, const std::string& reference = "def");
std::string format_table(const Table& table);

struct EcdfSeries {
    std::string configuration;  // algorithm/mapping/<dimension>d
    std::vector<stats::EcdfPoint> points;
};

/// Benchmark records only; `group` empty means all categories.
std::vector<EcdfSeries> export_ecdf(const std::vector<RunRow>& rows, std::optional<FunctionCategory> group);
void write_ecdf_csv(std::ostream& out, const std::vector<EcdfSeries>& series);

/// Shortest round-trip rendering used in every output file.
std::string format_double(double v);

}  // namespace genomap::harness
