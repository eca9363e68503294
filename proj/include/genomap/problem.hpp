#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "genomap/core.hpp"

namespace genomap {

/// Objective values at most this far above the optimum count as a hit.
inline constexpr double kHitTolerance = 1e-8;

/// A minimization objective over a fixed-length phenotype.
///
/// evaluate() is the only entry point the optimizers use; it validates the
/// input length, counts the call and rejects NaN results.
class Problem {
public:
    virtual ~Problem() = default;

    virtual std::size_t dimension() const = 0;
    virtual Bounds bounds() const = 0;
    virtual double optimum_value() const { return 0.0; }
    virtual std::string name() const = 0;

    double evaluate(std::span<const double> phenotype);

    std::uint64_t eval_count() const noexcept { return eval_count_; }

    bool is_hit(double fitness) const { return fitness - optimum_value() <= kHitTolerance; }

protected:
    virtual double objective(std::span<const double> phenotype) const = 0;

private:
    std::uint64_t eval_count_ = 0;
};

}  // namespace genomap
