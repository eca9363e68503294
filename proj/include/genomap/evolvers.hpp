#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "genomap/core.hpp"
#include "genomap/mapping.hpp"
#include "genomap/problem.hpp"
#include "genomap/stats.hpp"

namespace genomap {

enum class CrossoverOp {
    discrete,
    simple_arithmetic,
    whole_arithmetic,
    local,
    sbx,
    blx_alpha,
    flat,
    bga,
    heuristic,
    average,
};

inline constexpr std::array kCrossoverPool{
    CrossoverOp::discrete, CrossoverOp::simple_arithmetic, CrossoverOp::whole_arithmetic,
    CrossoverOp::local,    CrossoverOp::sbx,               CrossoverOp::blx_alpha,
    CrossoverOp::flat,     CrossoverOp::bga,               CrossoverOp::heuristic,
    CrossoverOp::average,
};

std::string_view crossover_name(CrossoverOp op);

struct CrossoverParams {
    double sbx_eta = 2.0;
    double blx_alpha = 0.5;
    double bga_low = -0.25;
    double bga_high = 1.25;
};

struct GaConfig {
    std::size_t population_size = 100;
    double mutation_probability = 0.3;
    CrossoverParams crossover;

    void validate() const;
};

struct DeConfig {
    std::size_t population_size = 100;
    double F = 1.0;
    double CR = 0.9;

    void validate() const;
};

using AlgorithmConfig = std::variant<GaConfig, DeConfig>;

std::string_view algorithm_name(const AlgorithmConfig& config);
std::size_t population_size(const AlgorithmConfig& config);

/// Fitness is NaN until the individual has been evaluated.
struct Individual {
    Genotype genotype;
    double fitness = std::numeric_limits<double>::quiet_NaN();
};

struct TrajectoryPoint {
    std::uint64_t evaluation;
    double best;

    friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

/// Decodes genotypes through a mapping, evaluates the problem and tracks the
/// best-so-far trajectory and first-hit evaluation of every ECDF target.
class Evaluator {
public:
    Evaluator(MappingSpec mapping, Problem& problem);

    const MappingSpec& mapping() const noexcept { return mapping_; }
    const GenotypeLayout& layout() const noexcept { return layout_; }
    Problem& problem() noexcept { return problem_; }

    double operator()(const Genotype& genotype);

    std::uint64_t evaluations() const noexcept { return evaluations_; }
    double best() const noexcept { return best_; }
    /// Change points of the best-so-far curve; the value holds until the next point.
    const std::vector<TrajectoryPoint>& trajectory() const noexcept { return trajectory_; }
    const stats::TargetHits& first_hits() const noexcept { return first_hits_; }

private:
    MappingSpec mapping_;
    Problem& problem_;
    GenotypeLayout layout_;
    std::vector<double> phenotype_;
    std::uint64_t evaluations_ = 0;
    double best_ = std::numeric_limits<double>::infinity();
    std::vector<TrajectoryPoint> trajectory_;
    stats::TargetHits first_hits_;
    std::size_t next_target_ = 0;
};

Genotype crossover(CrossoverOp op, const Individual& parent1, const Individual& parent2, RngStream& rng,
                   const Bounds& domain, const CrossoverParams& params = {});

/// Random population on the genotype domain, every member evaluated.
std::vector<Individual> initial_population(std::size_t size, Evaluator& eval, RngStream& rng);

/// One steady-state step: three distinct members are drawn, the worst is
/// replaced by the crossover child of the other two (optionally mutated).
/// Costs exactly one evaluation.
void ga_step(std::vector<Individual>& population, const GaConfig& config, Evaluator& eval, RngStream& rng);

/// One rand/1/bin generation with greedy replacement. Evaluates at most
/// `max_trials` targets (in index order); returns the number evaluated.
std::size_t de_generation(std::vector<Individual>& population, const DeConfig& config, Evaluator& eval,
                          RngStream& rng, std::size_t max_trials = std::numeric_limits<std::size_t>::max());

struct RunRecord {
    std::vector<TrajectoryPoint> trajectory;
    double final_best;
    bool hit;
    stats::TargetHits first_hits;
    std::uint64_t evaluations;
    std::vector<double> best_genotype;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Runs until exactly `budget` evaluations have been spent. Runs continue
/// after the first hit so every target's first-hit time is recorded.
RunRecord run(const AlgorithmConfig& config, const MappingSpec& mapping, Problem& problem, std::uint64_t budget,
              std::uint64_t seed);

}  // namespace genomap
