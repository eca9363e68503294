#include "genomap/evolvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace genomap {

std::string_view crossover_name(CrossoverOp op) {
    switch (op) {
        case CrossoverOp::discrete: return "discrete";
        case CrossoverOp::simple_arithmetic: return "simple-arithmetic";
        case CrossoverOp::whole_arithmetic: return "whole-arithmetic";
        case CrossoverOp::local: return "local";
        case CrossoverOp::sbx: return "sbx";
        case CrossoverOp::blx_alpha: return "blx-alpha";
        case CrossoverOp::flat: return "flat";
        case CrossoverOp::bga: return "bga";
        case CrossoverOp::heuristic: return "heuristic";
        case CrossoverOp::average: return "average";
    }
    return "?";
}

void GaConfig::validate() const {
    if (population_size < 3) {
        throw std::invalid_argument("GA population_size must be at least 3");
    }
    if (!(mutation_probability >= 0.0 && mutation_probability <= 1.0)) {
        throw std::invalid_argument("GA mutation_probability must lie in [0, 1]");
    }
    if (!(crossover.sbx_eta >= 0.0) || !(crossover.blx_alpha >= 0.0) ||
        !(crossover.bga_low <= crossover.bga_high)) {
        throw std::invalid_argument("invalid crossover parameters");
    }
}

void DeConfig::validate() const {
    if (population_size < 4) {
        throw std::invalid_argument("DE population_size must be at least 4");
    }
    // F = 0 is accepted for degenerate experiments
    if (!(F >= 0.0) || !std::isfinite(F)) {
        throw std::invalid_argument("DE F must be a finite non-negative number");
    }
    if (!(CR >= 0.0 && CR <= 1.0)) {
        throw std::invalid_argument("DE CR must lie in [0, 1]");
    }
}

std::string_view algorithm_name(const AlgorithmConfig& config) {
    return std::holds_alternative<GaConfig>(config) ? "ga" : "de";
}

std::size_t population_size(const AlgorithmConfig& config) {
    return std::visit([](const auto& c) { return c.population_size; }, config);
}

Evaluator::Evaluator(MappingSpec mapping, Problem& problem)
    : mapping_(mapping),
      problem_(problem),
      layout_(genomap::layout(mapping, problem.dimension(), problem.bounds())),
      phenotype_(problem.dimension()) {
    first_hits_.fill(-1);
}

double Evaluator::operator()(const Genotype& genotype) {
    decode_into(mapping_, genotype.genes(), problem_.bounds(), phenotype_);
    const double f = problem_.evaluate(phenotype_);
    ++evaluations_;
    if (f < best_ || trajectory_.empty()) {
        best_ = std::min(f, best_);
        trajectory_.push_back({evaluations_, best_});
        const auto& targets = stats::ecdf_targets();
        const double gap = best_ - problem_.optimum_value();
        // targets descend, so hits are always a prefix
        while (next_target_ < targets.size() && gap <= targets[next_target_]) {
            first_hits_[next_target_] = static_cast<std::int64_t>(evaluations_);
            ++next_target_;
        }
    }
    return f;
}

Genotype crossover(CrossoverOp op, const Individual& parent1, const Individual& parent2, RngStream& rng,
                   const Bounds& domain, const CrossoverParams& params) {
    const auto p1 = parent1.genotype.genes();
    const auto p2 = parent2.genotype.genes();
    if (p1.size() != p2.size()) {
        throw std::invalid_argument("crossover parents differ in length");
    }
    const std::size_t n = p1.size();
    std::vector<double> child(n);

    switch (op) {
        case CrossoverOp::discrete:
            for (std::size_t i = 0; i < n; ++i) child[i] = rng.bernoulli(0.5) ? p1[i] : p2[i];
            break;
        case CrossoverOp::simple_arithmetic: {
            const std::size_t cut = rng.index(n);
            for (std::size_t i = 0; i < n; ++i) child[i] = i < cut ? p1[i] : 0.5 * (p1[i] + p2[i]);
            break;
        }
        case CrossoverOp::whole_arithmetic: {
            const double a = rng.uniform01();
            for (std::size_t i = 0; i < n; ++i) child[i] = p2[i] + a * (p1[i] - p2[i]);
            break;
        }
        case CrossoverOp::local:
            for (std::size_t i = 0; i < n; ++i) {
                const double a = rng.uniform01();
                child[i] = p2[i] + a * (p1[i] - p2[i]);
            }
            break;
        case CrossoverOp::sbx: {
            const bool first = rng.bernoulli(0.5);
            const double exponent = 1.0 / (params.sbx_eta + 1.0);
            for (std::size_t i = 0; i < n; ++i) {
                const double u = rng.uniform01();
                const double beta =
                    u <= 0.5 ? std::pow(2.0 * u, exponent) : std::pow(1.0 / (2.0 * (1.0 - u)), exponent);
                // 0.5((1 +- beta) p1 + (1 -+ beta) p2), arranged to be exact for p1 == p2
                const double spread = 0.5 * beta * (p1[i] - p2[i]);
                const double mid = 0.5 * (p1[i] + p2[i]);
                child[i] = first ? mid + spread : mid - spread;
            }
            break;
        }
        case CrossoverOp::blx_alpha:
            for (std::size_t i = 0; i < n; ++i) {
                const double lo = std::min(p1[i], p2[i]);
                const double hi = std::max(p1[i], p2[i]);
                const double spread = params.blx_alpha * (hi - lo);
                child[i] = rng.uniform(lo - spread, hi + spread);
            }
            break;
        case CrossoverOp::flat:
            for (std::size_t i = 0; i < n; ++i) {
                child[i] = rng.uniform(std::min(p1[i], p2[i]), std::max(p1[i], p2[i]));
            }
            break;
        case CrossoverOp::bga: {
            const double a = rng.uniform(params.bga_low, params.bga_high);
            for (std::size_t i = 0; i < n; ++i) child[i] = p1[i] + a * (p2[i] - p1[i]);
            break;
        }
        case CrossoverOp::heuristic: {
            const bool first_better = !(parent2.fitness < parent1.fitness);
            const auto better = first_better ? p1 : p2;
            const auto worse = first_better ? p2 : p1;
            const double r = rng.uniform01();
            for (std::size_t i = 0; i < n; ++i) child[i] = better[i] + r * (better[i] - worse[i]);
            break;
        }
        case CrossoverOp::average:
            for (std::size_t i = 0; i < n; ++i) child[i] = 0.5 * (p1[i] + p2[i]);
            break;
    }
    for (double& v : child) v = clip(v, domain);
    return Genotype(std::move(child));
}

std::vector<Individual> initial_population(std::size_t size, Evaluator& eval, RngStream& rng) {
    std::vector<Individual> population;
    population.reserve(size);
    const GenotypeLayout& lay = eval.layout();
    for (std::size_t i = 0; i < size; ++i) {
        Genotype g = uniform_genotype(lay.genotype_length, lay.genotype_bounds, rng);
        const double f = eval(g);
        population.push_back({std::move(g), f});
    }
    return population;
}

namespace {

void require_evaluated(const std::vector<Individual>& population) {
    for (const Individual& ind : population) {
        if (std::isnan(ind.fitness)) {
            throw std::logic_error("population contains an unevaluated individual");
        }
    }
}

}  // namespace

void ga_step(std::vector<Individual>& population, const GaConfig& config, Evaluator& eval, RngStream& rng) {
    if (population.size() < 3) {
        throw std::invalid_argument("GA step needs at least three individuals");
    }
    require_evaluated(population);

    std::array<std::size_t, 3> trio{};
    trio[0] = rng.index(population.size());
    do {
        trio[1] = rng.index(population.size());
    } while (trio[1] == trio[0]);
    do {
        trio[2] = rng.index(population.size());
    } while (trio[2] == trio[0] || trio[2] == trio[1]);

    double worst_fitness = population[trio[0]].fitness;
    for (std::size_t k : trio) worst_fitness = std::max(worst_fitness, population[k].fitness);
    std::array<std::size_t, 3> tied{};
    std::size_t tie_count = 0;
    for (std::size_t slot = 0; slot < 3; ++slot) {
        if (population[trio[slot]].fitness == worst_fitness) tied[tie_count++] = slot;
    }
    const std::size_t worst_slot = tie_count == 1 ? tied[0] : tied[rng.index(tie_count)];
    const std::size_t worst = trio[worst_slot];
    const std::size_t a = trio[(worst_slot + 1) % 3];
    const std::size_t b = trio[(worst_slot + 2) % 3];

    const Bounds& domain = eval.layout().genotype_bounds;
    const CrossoverOp op = kCrossoverPool[rng.index(kCrossoverPool.size())];
    Genotype child = crossover(op, population[a], population[b], rng, domain, config.crossover);

    if (rng.bernoulli(config.mutation_probability)) {
        std::vector<double> genes(child.genes().begin(), child.genes().end());
        genes[rng.index(genes.size())] = rng.uniform(domain.lower, domain.upper);
        child = Genotype(std::move(genes));
    }
    const double f = eval(child);
    population[worst] = Individual{std::move(child), f};
}

std::size_t de_generation(std::vector<Individual>& population, const DeConfig& config, Evaluator& eval,
                          RngStream& rng, std::size_t max_trials) {
    const std::size_t np = population.size();
    if (np < 4) {
        throw std::invalid_argument("DE needs a population of at least four");
    }
    require_evaluated(population);
    const Bounds& domain = eval.layout().genotype_bounds;
    const std::size_t n = population.front().genotype.size();

    std::vector<Individual> next = population;
    std::size_t trials = 0;
    for (std::size_t i = 0; i < np && trials < max_trials; ++i) {
        std::size_t r1, r2, r3;
        do r1 = rng.index(np); while (r1 == i);
        do r2 = rng.index(np); while (r2 == i || r2 == r1);
        do r3 = rng.index(np); while (r3 == i || r3 == r1 || r3 == r2);

        const auto x1 = population[r1].genotype.genes();
        const auto x2 = population[r2].genotype.genes();
        const auto x3 = population[r3].genotype.genes();
        const auto target = population[i].genotype.genes();
        const std::size_t forced = rng.index(n);

        std::vector<double> trial(n);
        for (std::size_t j = 0; j < n; ++j) {
            const bool take_mutant = j == forced || rng.uniform01() < config.CR;
            trial[j] = take_mutant ? clip(x1[j] + config.F * (x2[j] - x3[j]), domain) : target[j];
        }
        Genotype g(std::move(trial));
        const double f = eval(g);
        ++trials;
        if (f <= population[i].fitness) {
            next[i] = Individual{std::move(g), f};
        }
    }
    population = std::move(next);
    return trials;
}

RunRecord run(const AlgorithmConfig& config, const MappingSpec& mapping, Problem& problem, std::uint64_t budget,
              std::uint64_t seed) {
    std::visit([](const auto& c) { c.validate(); }, config);
    const std::size_t pop_size = population_size(config);
    if (budget < pop_size) {
        throw std::invalid_argument("budget " + std::to_string(budget) + " is smaller than the population size " +
                                    std::to_string(pop_size));
    }
    RngStream rng(seed);
    Evaluator eval(mapping, problem);
    std::vector<Individual> population = initial_population(pop_size, eval, rng);

    if (const auto* ga = std::get_if<GaConfig>(&config)) {
        while (eval.evaluations() < budget) ga_step(population, *ga, eval, rng);
    } else {
        const auto& de = std::get<DeConfig>(config);
        while (eval.evaluations() < budget) {
            de_generation(population, de, eval, rng, static_cast<std::size_t>(budget - eval.evaluations()));
        }
    }

    const auto best = std::min_element(population.begin(), population.end(),
                                       [](const Individual& x, const Individual& y) { return x.fitness < y.fitness; });
    RunRecord record{eval.trajectory(), eval.best(), problem.is_hit(eval.best()), eval.first_hits(),
                     eval.evaluations(),
                     std::vector<double>(best->genotype.genes().begin(), best->genotype.genes().end())};
    return record;
}

}  // namespace genomap
