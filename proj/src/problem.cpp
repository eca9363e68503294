#include "genomap/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace genomap {

double Problem::evaluate(std::span<const double> phenotype) {
    if (phenotype.size() != dimension()) {
        throw std::invalid_argument(name() + ": expected " + std::to_string(dimension()) +
                                    " variables, got " + std::to_string(phenotype.size()));
    }
    ++eval_count_;
    const double f = objective(phenotype);
    if (std::isnan(f)) {
        throw std::logic_error(name() + ": objective produced NaN");
    }
    return f;
}

}  // namespace genomap
