#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "genomap/problem.hpp"

namespace genomap {

enum class FunctionCategory {
    separable,
    low_moderate_conditioning,
    high_conditioning_unimodal,
    multimodal_adequate,
    multimodal_weak,
};

enum class FunctionId {
    sphere,
    rastrigin_separable,
    rosenbrock,
    attractive_sector,
    ellipsoid_rotated,
    bent_cigar,
    rastrigin_rotated,
    schaffers_f7,
    schwefel,
    lunacek,
};

inline constexpr std::array kAllFunctions{
    FunctionId::sphere,          FunctionId::rastrigin_separable, FunctionId::rosenbrock,
    FunctionId::attractive_sector, FunctionId::ellipsoid_rotated, FunctionId::bent_cigar,
    FunctionId::rastrigin_rotated, FunctionId::schaffers_f7,      FunctionId::schwefel,
    FunctionId::lunacek,
};

std::string_view function_name(FunctionId id);
FunctionId parse_function(std::string_view name);
FunctionCategory category_of(FunctionId id);
std::string_view category_name(FunctionCategory c);
FunctionCategory parse_category(std::string_view name);

/// Untransformed base function; every one has its minimum 0 at z = 0.
double base_function(FunctionId id, std::span<const double> z);

/// A shifted (and, for non-separable functions, rotated) suite function on
/// [-5, 5]^t: f(x) = base(R (x - x_opt)).
class ProblemInstance final : public Problem {
public:
    ProblemInstance(FunctionId id, std::size_t dimension, std::vector<double> shift,
                    std::vector<double> rotation);

    std::size_t dimension() const override { return shift_.size(); }
    Bounds bounds() const override { return Bounds(-5.0, 5.0); }
    std::string name() const override;

    FunctionId function() const noexcept { return id_; }
    FunctionCategory category() const noexcept { return category_of(id_); }
    std::span<const double> shift() const noexcept { return shift_; }
    /// Row-major t x t orthogonal matrix.
    std::span<const double> rotation() const noexcept { return rotation_; }

protected:
    double objective(std::span<const double> x) const override;

private:
    FunctionId id_;
    std::vector<double> shift_;
    std::vector<double> rotation_;
    mutable std::vector<double> work_;
};

ProblemInstance make_instance(FunctionId id, std::size_t dimension, std::uint64_t instance_seed);

/// Haar-distributed orthogonal matrix (row-major) from Gram-Schmidt on a
/// Gaussian matrix.
std::vector<double> random_rotation(std::size_t n, RngStream& rng);

/// max |(R R^T - I)_ij|
double orthogonality_defect(std::span<const double> rotation, std::size_t n);

}  // namespace genomap
