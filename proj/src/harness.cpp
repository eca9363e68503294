#include "genomap/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "genomap/puf.hpp"

namespace genomap::harness {

using nlohmann::json;

namespace {

constexpr const char* kCsvHeader =
    "problem,kind,category,dimension,algorithm,mapping,instance,seed,budget,evaluations,counter,"
    "final_fitness,hit,status,first_hits";

[[noreturn]] void fail(const std::string& key, const std::string& message) {
    throw ConfigError(key + ": " + message);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end()) {
            fail(path.empty() ? key : path + "." + key, "unknown key");
        }
    }
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

const json& require(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail(join(path, key), "missing required key");
    return obj.at(key);
}

std::uint64_t as_uint(const json& v, const std::string& key, std::uint64_t minimum = 0) {
    if (!v.is_number_integer()) fail(key, "expected a non-negative integer");
    if (v.is_number_unsigned()) {
        const auto u = v.get<std::uint64_t>();
        if (u < minimum) fail(key, "must be at least " + std::to_string(minimum));
        return u;
    }
    const auto s = v.get<std::int64_t>();
    if (s < 0 || static_cast<std::uint64_t>(s) < minimum) fail(key, "must be at least " + std::to_string(minimum));
    return static_cast<std::uint64_t>(s);
}

double as_double(const json& v, const std::string& key) {
    if (!v.is_number()) fail(key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(key, "must be finite");
    return d;
}

std::string as_string(const json& v, const std::string& key) {
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
}

template <typename Fn>
auto converting(const std::string& key, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        fail(key, e.what());
    }
}

std::optional<std::uint64_t> optional_budget(const json& entry, const std::string& path) {
    if (!entry.contains("budget")) return std::nullopt;
    return as_uint(entry.at("budget"), join(path, "budget"), 1);
}

void parse_problem(const json& entry, const std::string& path, std::vector<ProblemSpec>& out) {
    if (!entry.is_object()) fail(path, "expected an object");
    const std::string type = as_string(require(entry, path, "type"), join(path, "type"));
    if (type == "benchmark") {
        check_keys(entry, path, {"type", "functions", "dimensions", "budget"});
        std::vector<FunctionId> functions;
        const std::string fkey = join(path, "functions");
        const json& fs = require(entry, path, "functions");
        if (fs.is_string() && fs.get<std::string>() == "all") {
            functions.assign(kAllFunctions.begin(), kAllFunctions.end());
        } else {
            if (!fs.is_array() || fs.empty()) fail(fkey, "expected \"all\" or a non-empty list of function ids");
            for (std::size_t i = 0; i < fs.size(); ++i) {
                const std::string key = fkey + "[" + std::to_string(i) + "]";
                const std::string name = as_string(fs[i], key);
                functions.push_back(converting(key, [&] { return parse_function(name); }));
            }
        }
        std::vector<std::size_t> dims{2, 5};
        if (entry.contains("dimensions")) {
            const std::string dkey = join(path, "dimensions");
            const json& ds = entry.at("dimensions");
            if (!ds.is_array() || ds.empty()) fail(dkey, "expected a non-empty list of dimensions");
            dims.clear();
            for (std::size_t i = 0; i < ds.size(); ++i) {
                dims.push_back(as_uint(ds[i], dkey + "[" + std::to_string(i) + "]", 1));
            }
        }
        const auto budget = optional_budget(entry, path);
        for (FunctionId f : functions) {
            for (std::size_t d : dims) {
                ProblemSpec p;
                p.kind = ProblemKind::benchmark;
                p.function = f;
                p.dimension = d;
                p.budget = budget;
                out.push_back(p);
            }
        }
    } else if (type == "puf") {
        check_keys(entry, path, {"type", "stages", "crps", "budget"});
        ProblemSpec p;
        p.kind = ProblemKind::puf;
        p.stages = as_uint(require(entry, path, "stages"), join(path, "stages"), 1);
        p.crps = entry.contains("crps") ? as_uint(entry.at("crps"), join(path, "crps"), 1) : 2000;
        p.budget = optional_budget(entry, path);
        out.push_back(p);
    } else if (type == "nn") {
        check_keys(entry, path, {"type", "task", "architecture", "budget"});
        ProblemSpec p;
        p.kind = ProblemKind::nn;
        const std::string tkey = join(path, "task");
        const std::string task = as_string(require(entry, path, "task"), tkey);
        p.task = converting(tkey, [&] { return nn::parse_task(task); });
        const std::string akey = join(path, "architecture");
        const std::string arch = as_string(require(entry, path, "architecture"), akey);
        p.architecture = converting(akey, [&] { return nn::parse_architecture(arch); });
        if (p.architecture.inputs != nn::task_inputs(p.task)) fail(akey, "input count does not match task " + task);
        if (p.architecture.outputs != 1) fail(akey, "exactly one output is supported");
        p.budget = optional_budget(entry, path);
        out.push_back(p);
    } else {
        fail(join(path, "type"), "unknown problem type '" + type + "' (expected benchmark, puf or nn)");
    }
}

AlgorithmConfig parse_algorithm(const json& entry, const std::string& path) {
    if (!entry.is_object()) fail(path, "expected an object");
    const std::string name = as_string(require(entry, path, "name"), join(path, "name"));
    auto number = [&](const char* key, double fallback) {
        return entry.contains(key) ? as_double(entry.at(key), join(path, key)) : fallback;
    };
    auto pop = [&](std::size_t fallback) {
        return entry.contains("population_size") ? as_uint(entry.at("population_size"), join(path, "population_size"), 4)
                                                 : fallback;
    };
    if (name == "ga") {
        check_keys(entry, path,
                   {"name", "population_size", "mutation_probability", "sbx_eta", "blx_alpha", "bga_low", "bga_high"});
        GaConfig ga;
        ga.population_size = pop(ga.population_size);
        ga.mutation_probability = number("mutation_probability", ga.mutation_probability);
        ga.crossover.sbx_eta = number("sbx_eta", ga.crossover.sbx_eta);
        ga.crossover.blx_alpha = number("blx_alpha", ga.crossover.blx_alpha);
        ga.crossover.bga_low = number("bga_low", ga.crossover.bga_low);
        ga.crossover.bga_high = number("bga_high", ga.crossover.bga_high);
        converting(path, [&] {
            ga.validate();
            return 0;
        });
        return ga;
    }
    if (name == "de") {
        check_keys(entry, path, {"name", "population_size", "F", "CR"});
        DeConfig de;
        de.population_size = pop(de.population_size);
        de.F = number("F", de.F);
        de.CR = number("CR", de.CR);
        converting(path, [&] {
            de.validate();
            return 0;
        });
        return de;
    }
    fail(join(path, "name"), "unknown algorithm '" + name + "' (expected ga or de)");
}

std::string sanitize(std::string text) {
    for (char& c : text) {
        if (c == ',' || c == '\n' || c == '\r') c = ' ';
    }
    return text;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

template <typename T>
T parse_number(const std::string& text, const char* what, std::size_t line) {
    T value{};
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw std::invalid_argument("runs.csv line " + std::to_string(line) + ": bad " + what + " '" + text + "'");
    }
    return value;
}

ProblemKind parse_kind(const std::string& text, std::size_t line) {
    if (text == "benchmark") return ProblemKind::benchmark;
    if (text == "puf") return ProblemKind::puf;
    if (text == "nn") return ProblemKind::nn;
    throw std::invalid_argument("runs.csv line " + std::to_string(line) + ": unknown kind '" + text + "'");
}

std::string algorithm_config_label(const AlgorithmConfig& config) { return std::string(algorithm_name(config)); }

std::size_t display_width(const std::string& s) {
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string pad(const std::string& s, std::size_t width) {
    const std::size_t w = display_width(s);
    return w >= width ? s : s + std::string(width - w, ' ');
}

template <typename... Args>
std::string printf_string(const char* fmt, Args... args) {
    char buf[128];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

}  // namespace

std::string_view kind_name(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::benchmark: return "benchmark";
        case ProblemKind::puf: return "puf";
        case ProblemKind::nn: return "nn";
    }
    return "?";
}

std::string ProblemSpec::label() const {
    switch (kind) {
        case ProblemKind::benchmark: return std::string(function_name(function)) + "-" + std::to_string(dimension) + "d";
        case ProblemKind::puf: return "puf-" + std::to_string(stages) + "-" + std::to_string(crps);
        case ProblemKind::nn: return "nn-" + std::string(nn::task_name(task)) + "-" + architecture.to_string();
    }
    return "?";
}

std::string ProblemSpec::category() const {
    return kind == ProblemKind::benchmark ? std::string(category_name(category_of(function))) : "-";
}

std::size_t ProblemSpec::phenotype_length() const {
    switch (kind) {
        case ProblemKind::benchmark: return dimension;
        case ProblemKind::puf: return stages + 1;
        case ProblemKind::nn: return architecture.parameter_count();
    }
    return 0;
}

std::uint64_t ProblemSpec::evaluation_budget(std::uint64_t budget_factor) const {
    return budget ? *budget : static_cast<std::uint64_t>(phenotype_length()) * budget_factor;
}

ExperimentSpec parse_experiment(const json& config) {
    check_keys(config, "", {"problems", "mappings", "algorithms", "execution"});
    ExperimentSpec spec;

    const json& problems = require(config, "", "problems");
    if (!problems.is_array() || problems.empty()) fail("problems", "expected a non-empty list");
    for (std::size_t i = 0; i < problems.size(); ++i) {
        parse_problem(problems[i], "problems[" + std::to_string(i) + "]", spec.problems);
    }

    const json& mappings = require(config, "", "mappings");
    if (!mappings.is_array() || mappings.empty()) fail("mappings", "expected a non-empty list of mapping codes");
    for (std::size_t i = 0; i < mappings.size(); ++i) {
        const std::string key = "mappings[" + std::to_string(i) + "]";
        const std::string code = as_string(mappings[i], key);
        spec.mappings.push_back(converting(key, [&] { return parse_mapping_code(code); }));
        for (std::size_t j = 0; j + 1 < spec.mappings.size(); ++j) {
            if (spec.mappings[j].code() == spec.mappings.back().code()) fail(key, "duplicate mapping '" + code + "'");
        }
    }

    const json& algorithms = require(config, "", "algorithms");
    if (!algorithms.is_array() || algorithms.empty()) fail("algorithms", "expected a non-empty list");
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
        spec.algorithms.push_back(parse_algorithm(algorithms[i], "algorithms[" + std::to_string(i) + "]"));
    }

    if (config.contains("execution")) {
        const json& ex = config.at("execution");
        check_keys(ex, "execution", {"instances_per_cell", "budget_factor", "master_seed", "workers"});
        if (ex.contains("instances_per_cell")) {
            spec.instances_per_cell = as_uint(ex.at("instances_per_cell"), "execution.instances_per_cell", 1);
        }
        if (ex.contains("budget_factor")) {
            spec.budget_factor = as_uint(ex.at("budget_factor"), "execution.budget_factor", 1);
        }
        if (ex.contains("master_seed")) spec.master_seed = as_uint(ex.at("master_seed"), "execution.master_seed");
        if (ex.contains("workers")) spec.workers = as_uint(ex.at("workers"), "execution.workers", 1);
    }

    for (std::size_t p = 0; p < spec.problems.size(); ++p) {
        const std::uint64_t budget = spec.problems[p].evaluation_budget(spec.budget_factor);
        for (const AlgorithmConfig& a : spec.algorithms) {
            if (budget < population_size(a)) {
                fail(spec.problems[p].budget ? "problems.budget" : "execution.budget_factor",
                     "budget " + std::to_string(budget) + " for " + spec.problems[p].label() +
                         " is below the population size " + std::to_string(population_size(a)));
            }
        }
    }
    return spec;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    json config;
    try {
        config = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_experiment(config);
}

json to_json(const ExperimentSpec& spec) {
    json problems = json::array();
    for (const ProblemSpec& p : spec.problems) {
        json e;
        switch (p.kind) {
            case ProblemKind::benchmark:
                e = {{"type", "benchmark"},
                     {"functions", {std::string(function_name(p.function))}},
                     {"dimensions", {p.dimension}}};
                break;
            case ProblemKind::puf: e = {{"type", "puf"}, {"stages", p.stages}, {"crps", p.crps}}; break;
            case ProblemKind::nn:
                e = {{"type", "nn"}, {"task", std::string(nn::task_name(p.task))},
                     {"architecture", p.architecture.to_string()}};
                break;
        }
        if (p.budget) e["budget"] = *p.budget;
        problems.push_back(e);
    }
    json mappings = json::array();
    for (const MappingSpec& m : spec.mappings) mappings.push_back(m.code());
    json algorithms = json::array();
    for (const AlgorithmConfig& a : spec.algorithms) {
        if (const auto* ga = std::get_if<GaConfig>(&a)) {
            algorithms.push_back({{"name", "ga"},
                                  {"population_size", ga->population_size},
                                  {"mutation_probability", ga->mutation_probability},
                                  {"sbx_eta", ga->crossover.sbx_eta},
                                  {"blx_alpha", ga->crossover.blx_alpha},
                                  {"bga_low", ga->crossover.bga_low},
                                  {"bga_high", ga->crossover.bga_high}});
        } else {
            const auto& de = std::get<DeConfig>(a);
            algorithms.push_back({{"name", "de"}, {"population_size", de.population_size}, {"F", de.F}, {"CR", de.CR}});
        }
    }
    return {{"problems", problems},
            {"mappings", mappings},
            {"algorithms", algorithms},
            {"execution",
             {{"instances_per_cell", spec.instances_per_cell},
              {"budget_factor", spec.budget_factor},
              {"master_seed", spec.master_seed},
              {"workers", spec.workers}}}};
}

std::uint64_t instance_seed(std::uint64_t master_seed, std::size_t problem_index, std::size_t instance) {
    return derive_seed(master_seed, {0, problem_index, instance});
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t problem_index, std::size_t algorithm_index,
                       std::size_t mapping_index, std::size_t instance) {
    return derive_seed(master_seed, {1, problem_index, algorithm_index, mapping_index, instance});
}

std::unique_ptr<Problem> make_problem(const ProblemSpec& problem, std::uint64_t master_seed,
                                      std::size_t problem_index, std::size_t instance) {
    const std::uint64_t seed = instance_seed(master_seed, problem_index, instance);
    switch (problem.kind) {
        case ProblemKind::benchmark:
            return std::make_unique<ProblemInstance>(make_instance(problem.function, problem.dimension, seed));
        case ProblemKind::puf: {
            RngStream rng(seed);
            auto [crps, hidden] = puf::generate_crps(problem.stages, problem.crps, rng);
            return std::make_unique<puf::PufProblem>(std::move(crps));
        }
        case ProblemKind::nn: {
            // One dataset per task, shared by every instance and configuration.
            RngStream rng(derive_seed(master_seed, {2, static_cast<std::uint64_t>(problem.task)}));
            return std::make_unique<nn::NnProblem>(problem.architecture,
                                                   nn::make_dataset(problem.task, nn::kDefaultDatasetSize, rng),
                                                   problem.label());
        }
    }
    throw std::logic_error("unknown problem kind");
}

std::vector<RunRow> run_experiment(const ExperimentSpec& spec, const ProblemFactory& factory) {
    if (spec.cell_count() == 0 || spec.instances_per_cell == 0) {
        throw std::invalid_argument("experiment has an empty cell matrix");
    }
    const std::size_t per_problem = spec.algorithms.size() * spec.mappings.size() * spec.instances_per_cell;
    const std::size_t total = spec.problems.size() * per_problem;
    std::vector<RunRow> rows(total);

    auto execute = [&](std::size_t job) {
        std::size_t rest = job;
        const std::size_t i = rest % spec.instances_per_cell;
        rest /= spec.instances_per_cell;
        const std::size_t m = rest % spec.mappings.size();
        rest /= spec.mappings.size();
        const std::size_t a = rest % spec.algorithms.size();
        const std::size_t p = rest / spec.algorithms.size();

        const ProblemSpec& ps = spec.problems[p];
        RunRow row;
        row.problem = ps.label();
        row.kind = ps.kind;
        row.category = ps.category();
        row.dimension = ps.phenotype_length();
        row.algorithm = algorithm_config_label(spec.algorithms[a]);
        row.mapping = spec.mappings[m].code();
        row.instance = i;
        row.seed = run_seed(spec.master_seed, p, a, m, i);
        row.budget = ps.evaluation_budget(spec.budget_factor);
        row.first_hits.fill(-1);

        std::unique_ptr<Problem> problem;
        try {
            problem = factory(ps, spec.master_seed, p, i);
            const RunRecord record = run(spec.algorithms[a], spec.mappings[m], *problem, row.budget, row.seed);
            row.evaluations = record.evaluations;
            row.counter = problem->eval_count();
            row.final_fitness = record.final_best;
            row.hit = record.hit;
            row.first_hits = record.first_hits;
        } catch (const std::exception& e) {
            row.status = "failed: " + sanitize(e.what());
            row.final_fitness = std::numeric_limits<double>::quiet_NaN();
            row.hit = false;
            row.counter = problem ? problem->eval_count() : 0;
            row.evaluations = row.counter;
        }
        rows[job] = std::move(row);
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(spec.workers, total));
    if (workers == 1) {
        for (std::size_t job = 0; job < total; ++job) execute(job);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t job = next++; job < total; job = next++) execute(job);
        });
    }
    for (std::thread& t : pool) t.join();
    return rows;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

void write_runs_csv(std::ostream& out, const std::vector<RunRow>& rows) {
    out << kCsvHeader << '\n';
    for (const RunRow& r : rows) {
        out << r.problem << ',' << kind_name(r.kind) << ',' << r.category << ',' << r.dimension << ',' << r.algorithm
            << ',' << r.mapping << ',' << r.instance << ',' << r.seed << ',' << r.budget << ',' << r.evaluations << ','
            << r.counter << ',' << format_double(r.final_fitness) << ',' << (r.hit ? 1 : 0) << ','
            << sanitize(r.status) << ',';
        for (std::size_t k = 0; k < r.first_hits.size(); ++k) {
            if (k) out << ';';
            out << r.first_hits[k];
        }
        out << '\n';
    }
}

std::vector<RunRow> read_runs_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::invalid_argument("runs.csv: unexpected header");
    }
    std::vector<RunRow> rows;
    std::size_t number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 15) {
            throw std::invalid_argument("runs.csv line " + std::to_string(number) + ": expected 15 fields, got " +
                                        std::to_string(f.size()));
        }
        RunRow r;
        r.problem = f[0];
        r.kind = parse_kind(f[1], number);
        r.category = f[2];
        r.dimension = parse_number<std::size_t>(f[3], "dimension", number);
        r.algorithm = f[4];
        r.mapping = f[5];
        r.instance = parse_number<std::size_t>(f[6], "instance", number);
        r.seed = parse_number<std::uint64_t>(f[7], "seed", number);
        r.budget = parse_number<std::uint64_t>(f[8], "budget", number);
        r.evaluations = parse_number<std::uint64_t>(f[9], "evaluations", number);
        r.counter = parse_number<std::uint64_t>(f[10], "counter", number);
        r.final_fitness = parse_number<double>(f[11], "final_fitness", number);
        r.hit = parse_number<int>(f[12], "hit", number) != 0;
        r.status = f[13];
        const auto hits = split(f[14], ';');
        if (hits.size() != stats::kTargetCount) {
            throw std::invalid_argument("runs.csv line " + std::to_string(number) + ": expected " +
                                        std::to_string(stats::kTargetCount) + " first-hit entries");
        }
        for (std::size_t k = 0; k < hits.size(); ++k) {
            r.first_hits[k] = parse_number<std::int64_t>(hits[k], "first_hits", number);
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_results(const std::filesystem::path& dir, const ExperimentSpec& spec, const std::vector<RunRow>& rows) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "runs.csv", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + (dir / "runs.csv").string());
        write_runs_csv(out, rows);
    }
    json config = to_json(spec);
    // Worker count does not affect results, so it stays out of the manifest.
    config["execution"].erase("workers");
    const auto failures = std::count_if(rows.begin(), rows.end(), [](const RunRow& r) { return !r.ok(); });
    const json manifest = {
        {"format", "genomap-results/1"},
        {"config", config},
        {"master_seed", spec.master_seed},
        {"seed_derivation",
         "splitmix64 fold: instance = derive(master, [0, problem, instance]); "
         "run = derive(master, [1, problem, algorithm, mapping, instance]); "
         "nn dataset = derive(master, [2, task])"},
        {"generator", "mt19937_64"},
        {"cells", spec.cell_count()},
        {"instances_per_cell", spec.instances_per_cell},
        {"records", rows.size()},
        {"failures", failures},
    };
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
    out << manifest.dump(2) << '\n';
}

std::vector<RunRow> load_results(const std::filesystem::path& path) {
    const std::filesystem::path file = std::filesystem::is_directory(path) ? path / "runs.csv" : path;
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open results file " + file.string());
    return read_runs_csv(in);
}

Table render_table(const std::vector<RunRow>& rows, TableMode mode, const std::string& reference) {
    std::vector<std::string> row_keys;
    std::vector<std::string> columns;
    std::map<std::pair<std::string, std::string>, std::vector<double>> cells;
    for (const RunRow& r : rows) {
        if (!r.ok()) continue;
        const std::string key = r.algorithm + "/" + r.problem;
        if (std::find(row_keys.begin(), row_keys.end(), key) == row_keys.end()) row_keys.push_back(key);
        if (std::find(columns.begin(), columns.end(), r.mapping) == columns.end()) columns.push_back(r.mapping);
        cells[{key, r.mapping}].push_back(r.final_fitness);
    }
    const auto ref = std::find(columns.begin(), columns.end(), reference);
    if (ref == columns.end()) {
        throw std::invalid_argument("reference mapping '" + reference + "' has no records");
    }
    std::rotate(columns.begin(), ref, ref + 1);

    Table table;
    table.columns = columns;
    for (const std::string& key : row_keys) {
        const auto ref_cell = cells.find({key, reference});
        if (ref_cell == cells.end()) {
            throw std::invalid_argument("row " + key + " has no records for reference mapping '" + reference + "'");
        }
        Table::Row row{key, {}};
        for (const std::string& column : columns) {
            const auto it = cells.find({key, column});
            if (it == cells.end()) {
                row.cells.push_back("n/a");
                continue;
            }
            const stats::Summary s = stats::summarize(it->second);
            std::string text = mode == TableMode::benchmark ? printf_string("%.2e (%zu)", s.median, s.hits)
                                                            : printf_string("%.1f±%.2f", s.median, s.stddev);
            if (column != reference) text += " " + stats::verdict(it->second, ref_cell->second).text();
            row.cells.push_back(std::move(text));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string format_table(const Table& table) {
    std::vector<std::size_t> widths(table.columns.size() + 1, 0);
    widths[0] = display_width("problem");
    for (std::size_t c = 0; c < table.columns.size(); ++c) widths[c + 1] = display_width(table.columns[c]);
    for (const Table::Row& row : table.rows) {
        widths[0] = std::max(widths[0], display_width(row.label));
        for (std::size_t c = 0; c < row.cells.size(); ++c) {
            widths[c + 1] = std::max(widths[c + 1], display_width(row.cells[c]));
        }
    }
    std::ostringstream out;
    out << pad("problem", widths[0]);
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << "  " << pad(table.columns[c], widths[c + 1]);
    out << '\n';
    for (const Table::Row& row : table.rows) {
        out << pad(row.label, widths[0]);
        for (std::size_t c = 0; c < row.cells.size(); ++c) out << "  " << pad(row.cells[c], widths[c + 1]);
        out << '\n';
    }
    return out.str();
}

std::vector<EcdfSeries> export_ecdf(const std::vector<RunRow>& rows, std::optional<FunctionCategory> group) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<stats::TargetHits>> hits;
    std::map<std::string, std::int64_t> budgets;
    for (const RunRow& r : rows) {
        if (r.kind != ProblemKind::benchmark) {
            throw std::invalid_argument("ECDF export needs benchmark records; got " + std::string(kind_name(r.kind)) +
                                        " record for " + r.problem);
        }
        if (!r.ok()) continue;
        if (group && r.category != category_name(*group)) continue;
        const std::string key = r.algorithm + "/" + r.mapping + "/" + std::to_string(r.dimension) + "d";
        if (!hits.count(key)) order.push_back(key);
        hits[key].push_back(r.first_hits);
        budgets[key] = std::max(budgets[key], static_cast<std::int64_t>(r.budget));
    }
    if (order.empty()) {
        throw std::invalid_argument("no benchmark records in group " +
                                    (group ? std::string(category_name(*group)) : std::string("all")));
    }
    std::vector<EcdfSeries> series;
    for (const std::string& key : order) series.push_back({key, stats::ecdf(hits[key], budgets[key])});
    return series;
}

void write_ecdf_csv(std::ostream& out, const std::vector<EcdfSeries>& series) {
    out << "configuration,evaluations,proportion\n";
    for (const EcdfSeries& s : series) {
        for (const stats::EcdfPoint& p : s.points) {
            out << s.configuration << ',' << p.evaluations << ',' << format_double(p.proportion) << '\n';
        }
    }
}

}  // namespace genomap::harness
