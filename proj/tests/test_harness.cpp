#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "genomap/harness.hpp"

using namespace genomap;
using namespace genomap::harness;
using nlohmann::json;

namespace {

json small_config() {
    return json::parse(R"({
        "problems": [{"type": "benchmark", "functions": ["sphere"], "dimensions": [2]}],
        "mappings": ["def", "exp-s-2"],
        "algorithms": [{"name": "ga", "population_size": 20}],
        "execution": {"instances_per_cell": 3, "budget_factor": 200, "master_seed": 11}
    })");
}

std::string config_error(const json& config) {
    try {
        parse_experiment(config);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

std::string csv_of(const std::vector<RunRow>& rows) {
    std::ostringstream out;
    write_runs_csv(out, rows);
    return out.str();
}

RunRow fixture_row(const std::string& mapping, double fitness, std::size_t instance) {
    RunRow r;
    r.problem = "sphere-2d";
    r.category = "separable";
    r.dimension = 2;
    r.algorithm = "ga";
    r.mapping = mapping;
    r.instance = instance;
    r.budget = 100;
    r.evaluations = 100;
    r.counter = 100;
    r.final_fitness = fitness;
    r.hit = fitness <= 1e-8;
    r.first_hits.fill(-1);
    return r;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int cli(const std::string& args) {
    const std::string command = std::string(GENOMAP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    return std::system(command.c_str());
}

}  // namespace

TEST_CASE("config defaults and expansion of the problem list") {
    const json config = json::parse(R"({
        "problems": [{"type": "benchmark", "functions": ["sphere", "bent-cigar"]},
                     {"type": "puf", "stages": 16, "crps": 100, "budget": 5000},
                     {"type": "nn", "task": "f2", "architecture": "2-5-3-1"}],
        "mappings": ["def", "com-alt"],
        "algorithms": [{"name": "ga"}, {"name": "de", "F": 0.5}]
    })");
    const ExperimentSpec spec = parse_experiment(config);
    REQUIRE(spec.problems.size() == 6);
    CHECK(spec.problems[0].label() == "sphere-2d");
    CHECK(spec.problems[1].label() == "sphere-5d");
    CHECK(spec.problems[3].category() == "high-conditioning-unimodal");
    CHECK(spec.problems[4].label() == "puf-16-100");
    CHECK(spec.problems[4].phenotype_length() == 17);
    CHECK(spec.problems[4].evaluation_budget(spec.budget_factor) == 5000);
    CHECK(spec.problems[5].phenotype_length() == 37);
    CHECK(spec.instances_per_cell == 30);
    CHECK(spec.budget_factor == 10000);
    CHECK(spec.cell_count() == 6 * 2 * 2);
    CHECK(std::get<DeConfig>(spec.algorithms[1]).F == 0.5);
    CHECK(std::get<DeConfig>(spec.algorithms[1]).CR == 0.9);

    // to_json is a fixed point of parsing
    const ExperimentSpec again = parse_experiment(to_json(spec));
    CHECK(to_json(again) == to_json(spec));
}

TEST_CASE("budget rule is dimension times factor") {
    ExperimentSpec spec = parse_experiment(small_config());
    CHECK(spec.problems[0].evaluation_budget(10000) == 20000);
    CHECK(spec.problems[0].evaluation_budget(spec.budget_factor) == 400);
}

TEST_CASE("invalid configs name the offending key") {
    json c = small_config();
    c["execution"]["instances"] = 3;
    CHECK(config_error(c).rfind("execution.instances:", 0) == 0);

    c = small_config();
    c["mappings"][1] = "exp-q-2";
    CHECK(config_error(c).rfind("mappings[1]:", 0) == 0);

    c = small_config();
    c["problems"][0]["functions"][0] = "griewank";
    CHECK(config_error(c).rfind("problems[0].functions[0]:", 0) == 0);

    c = small_config();
    c.erase("algorithms");
    CHECK(config_error(c).rfind("algorithms:", 0) == 0);

    c = small_config();
    c["algorithms"][0]["mutation_probability"] = 1.5;
    CHECK(config_error(c).rfind("algorithms[0]:", 0) == 0);

    c = small_config();
    c["execution"]["budget_factor"] = 5;
    CHECK(config_error(c).rfind("execution.budget_factor:", 0) == 0);

    c = small_config();
    c["problems"][0]["type"] = "cec";
    CHECK(config_error(c).rfind("problems[0].type:", 0) == 0);

    c = small_config();
    c["problems"][0] = json::parse(R"({"type": "nn", "task": "f2", "architecture": "1-5-3-1"})");
    CHECK(config_error(c).rfind("problems[0].architecture:", 0) == 0);
}

TEST_CASE("one cell with three instances gives three complete records") {
    json c = small_config();
    c["mappings"] = {"def"};
    const ExperimentSpec spec = parse_experiment(c);
    const auto rows = run_experiment(spec);
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].instance == i);
        CHECK(rows[i].ok());
        CHECK(rows[i].evaluations == 400);
        CHECK(rows[i].counter == 400);
        CHECK(rows[i].hit == (rows[i].final_fitness <= kHitTolerance));
        CHECK(rows[i].seed == run_seed(11, 0, 0, 0, i));
    }
    CHECK(rows[0].seed != rows[1].seed);
}

TEST_CASE("records are ordered by cell and instance and independent of worker count") {
    ExperimentSpec spec = parse_experiment(small_config());
    const auto serial = run_experiment(spec);
    REQUIRE(serial.size() == 6);
    CHECK(serial[0].mapping == "def");
    CHECK(serial[2].instance == 2);
    CHECK(serial[3].mapping == "exp-s-2");
    CHECK(serial[3].instance == 0);
    spec.workers = 4;
    CHECK(csv_of(run_experiment(spec)) == csv_of(serial));
}

TEST_CASE("instances are shared across mappings and differ across instance indices") {
    const ExperimentSpec spec = parse_experiment(small_config());
    auto a = make_problem(spec.problems[0], 11, 0, 1);
    auto b = make_problem(spec.problems[0], 11, 0, 1);
    auto c = make_problem(spec.problems[0], 11, 0, 2);
    const auto& ia = dynamic_cast<const ProblemInstance&>(*a);
    const auto& ib = dynamic_cast<const ProblemInstance&>(*b);
    const auto& ic = dynamic_cast<const ProblemInstance&>(*c);
    CHECK(std::equal(ia.shift().begin(), ia.shift().end(), ib.shift().begin()));
    CHECK_FALSE(std::equal(ia.shift().begin(), ia.shift().end(), ic.shift().begin()));
}

TEST_CASE("a failing run is marked and the rest are kept") {
    const ExperimentSpec spec = parse_experiment(small_config());
    const ProblemFactory flaky = [](const ProblemSpec& p, std::uint64_t seed, std::size_t pi,
                                    std::size_t instance) -> std::unique_ptr<Problem> {
        if (instance == 1) throw std::runtime_error("synthetic fault, instance 1");
        return make_problem(p, seed, pi, instance);
    };
    const auto rows = run_experiment(spec, flaky);
    REQUIRE(rows.size() == 6);
    CHECK(std::count_if(rows.begin(), rows.end(), [](const RunRow& r) { return !r.ok(); }) == 2);
    CHECK_FALSE(rows[1].ok());
    CHECK(rows[1].status.rfind("failed: synthetic fault", 0) == 0);
    CHECK(rows[1].status.find(',') == std::string::npos);
    CHECK(std::isnan(rows[1].final_fitness));
    CHECK(rows[0].ok());
    CHECK(rows[0].evaluations == 400);

    // the failure marker survives persistence and the table skips it
    std::istringstream in(csv_of(rows));
    const auto back = read_runs_csv(in);
    CHECK_FALSE(back[1].ok());
    CHECK_NOTHROW(render_table(back, TableMode::benchmark));
}

TEST_CASE("runs.csv round trip is lossless") {
    const auto rows = run_experiment(parse_experiment(small_config()));
    std::istringstream in(csv_of(rows));
    const auto back = read_runs_csv(in);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].final_fitness == rows[i].final_fitness);
        CHECK(back[i].seed == rows[i].seed);
        CHECK(back[i].first_hits == rows[i].first_hits);
        CHECK(back[i].mapping == rows[i].mapping);
    }
    CHECK(csv_of(back) == csv_of(rows));

    std::istringstream bad("problem,kind\n");
    CHECK_THROWS_AS(read_runs_csv(bad), std::invalid_argument);
}

TEST_CASE("format_double is shortest round trip") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1e-300) == "1e-300");
    CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("results directory is byte-identical across reruns") {
    const auto base = std::filesystem::temp_directory_path() / "genomap_harness_rerun";
    std::filesystem::remove_all(base);
    ExperimentSpec spec = parse_experiment(small_config());
    write_results(base / "a", spec, run_experiment(spec));
    spec.workers = 3;
    write_results(base / "b", spec, run_experiment(spec));
    CHECK(slurp(base / "a" / "runs.csv") == slurp(base / "b" / "runs.csv"));
    CHECK(slurp(base / "a" / "manifest.json") == slurp(base / "b" / "manifest.json"));
    const json manifest = json::parse(slurp(base / "a" / "manifest.json"));
    CHECK(manifest.at("master_seed").get<std::uint64_t>() == 11);
    CHECK(manifest.at("records").get<std::size_t>() == 6);
    CHECK(load_results(base / "a").size() == 6);
    std::filesystem::remove_all(base);
}

TEST_CASE("table: single reference column has no verdict symbols") {
    std::vector<RunRow> rows;
    for (std::size_t i = 0; i < 5; ++i) rows.push_back(fixture_row("def", 0.1 * static_cast<double>(i), i));
    const Table t = render_table(rows, TableMode::benchmark);
    REQUIRE(t.columns == std::vector<std::string>{"def"});
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].label == "ga/sphere-2d");
    CHECK(t.rows[0].cells[0] == "2.00e-01 (1)");
}

TEST_CASE("table: benchmark cell format with median and hits") {
    // 24 zeros, 2 x 3.37e-09, 5 x 5e-09 (31 hits), 19 misses: median is the 25th/26th value
    std::vector<RunRow> rows;
    std::size_t i = 0;
    for (int k = 0; k < 24; ++k) rows.push_back(fixture_row("def", 0.0, i++));
    for (int k = 0; k < 2; ++k) rows.push_back(fixture_row("def", 3.37e-9, i++));
    for (int k = 0; k < 5; ++k) rows.push_back(fixture_row("def", 5e-9, i++));
    for (int k = 0; k < 19; ++k) rows.push_back(fixture_row("def", 1.0, i++));
    CHECK(render_table(rows, TableMode::benchmark).rows[0].cells[0] == "3.37e-09 (31)");
}

TEST_CASE("table: identical candidate is '=' and pm mode formatting") {
    std::vector<RunRow> rows;
    const double values[] = {10.0, 20.0, 30.0};
    for (std::size_t i = 0; i < 3; ++i) rows.push_back(fixture_row("def", values[i], i));
    for (std::size_t i = 0; i < 3; ++i) rows.push_back(fixture_row("exp-s-2", values[i], i));
    const Table t = render_table(rows, TableMode::pm);
    REQUIRE(t.columns == std::vector<std::string>{"def", "exp-s-2"});
    CHECK(t.rows[0].cells[0] == "20.0±8.16");
    CHECK(t.rows[0].cells[1] == "20.0±8.16 =");
    CHECK(format_table(t).find("exp-s-2") != std::string::npos);
}

TEST_CASE("table: reference column goes first and must exist") {
    std::vector<RunRow> rows;
    for (std::size_t i = 0; i < 4; ++i) rows.push_back(fixture_row("com-seq", 1.0 + static_cast<double>(i), i));
    CHECK_THROWS_AS(render_table(rows, TableMode::benchmark), std::invalid_argument);
    for (std::size_t i = 0; i < 4; ++i) rows.push_back(fixture_row("def", 1e-9 * static_cast<double>(i), i));
    const Table t = render_table(rows, TableMode::benchmark);
    CHECK(t.columns.front() == "def");
    CHECK(t.rows[0].cells[1].back() == '-');
    CHECK(render_table(rows, TableMode::benchmark, "com-seq").rows[0].cells[1].back() == '+');
}

TEST_CASE("table verdicts agree with recomputed statistics from persisted records") {
    json c = small_config();
    c["mappings"] = {"def", "exp-s-2", "com-seq"};
    c["execution"]["instances_per_cell"] = 9;
    const auto rows = run_experiment(parse_experiment(c));
    std::istringstream in(csv_of(rows));
    const auto back = read_runs_csv(in);
    const Table t = render_table(back, TableMode::benchmark);
    auto values = [&](const std::string& m) {
        std::vector<double> v;
        for (const RunRow& r : back)
            if (r.mapping == m) v.push_back(r.final_fitness);
        return v;
    };
    for (std::size_t col = 1; col < t.columns.size(); ++col) {
        const std::string expected = stats::verdict(values(t.columns[col]), values("def")).text();
        const std::string& cell = t.rows[0].cells[col];
        CHECK(cell.substr(cell.size() - 1) == expected);
    }
}

TEST_CASE("ECDF export") {
    const auto rows = run_experiment(parse_experiment(small_config()));
    SUBCASE("one configuration per mapping, curves are valid") {
        const auto series = export_ecdf(rows, FunctionCategory::separable);
        REQUIRE(series.size() == 2);
        CHECK(series[0].configuration == "ga/def/2d");
        for (const EcdfSeries& s : series) {
            double prev = 0.0;
            for (const auto& p : s.points) {
                CHECK(p.proportion >= prev);
                CHECK(p.proportion <= 1.0);
                prev = p.proportion;
            }
            CHECK(s.points.back().evaluations == 400);
        }
        std::ostringstream out;
        write_ecdf_csv(out, series);
        CHECK(out.str().rfind("configuration,evaluations,proportion\n", 0) == 0);
    }
    SUBCASE("one configuration and one group give one series") {
        std::vector<RunRow> def_only;
        std::copy_if(rows.begin(), rows.end(), std::back_inserter(def_only),
                     [](const RunRow& r) { return r.mapping == "def"; });
        CHECK(export_ecdf(def_only, std::nullopt).size() == 1);
    }
    SUBCASE("empty group is an error") {
        CHECK_THROWS_AS(export_ecdf(rows, FunctionCategory::multimodal_weak), std::invalid_argument);
    }
    SUBCASE("non-benchmark records are rejected") {
        auto mixed = rows;
        mixed[0].kind = ProblemKind::puf;
        CHECK_THROWS_AS(export_ecdf(mixed, std::nullopt), std::invalid_argument);
    }
}

TEST_CASE("cli subcommands and exit codes") {
    const auto base = std::filesystem::temp_directory_path() / "genomap_cli_test";
    std::filesystem::remove_all(base);
    std::filesystem::create_directories(base);
    {
        std::ofstream(base / "config.json") << small_config().dump();
        json bad = small_config();
        bad["execution"]["seed"] = 1;
        std::ofstream(base / "bad.json") << bad.dump();
        std::ofstream(base / "broken.json") << "{\"problems\": [";
    }
    const std::string dir = base.string();
    CHECK(cli("run " + dir + "/config.json -o " + dir + "/out") == 0);
    CHECK(std::filesystem::exists(base / "out" / "runs.csv"));
    CHECK(std::filesystem::exists(base / "out" / "manifest.json"));
    CHECK(cli("table " + dir + "/out") == 0);
    CHECK(cli("table " + dir + "/out --mode pm") == 0);
    CHECK(cli("table " + dir + "/out --reference com-seq") != 0);
    CHECK(cli("ecdf " + dir + "/out --group all -o " + dir + "/ecdf.csv") == 0);
    CHECK(slurp(base / "ecdf.csv").rfind("configuration,evaluations,proportion", 0) == 0);
    CHECK(cli("ecdf " + dir + "/out --group multimodal-weak") != 0);
    CHECK(cli("ecdf " + dir + "/out --group nonsense") != 0);
    CHECK(cli("seed-info " + dir + "/out") == 0);
    CHECK(cli("run " + dir + "/bad.json") != 0);
    CHECK(cli("run " + dir + "/broken.json") != 0);
    CHECK(cli("run " + dir + "/missing.json") != 0);
    CHECK(cli("table " + dir + "/nowhere") != 0);
    CHECK(cli("") != 0);
    std::filesystem::remove_all(base);
}
