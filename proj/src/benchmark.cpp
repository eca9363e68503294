#include "genomap/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace genomap {

namespace {

struct FunctionInfo {
    FunctionId id;
    std::string_view name;
    FunctionCategory category;
};

constexpr std::array<FunctionInfo, 10> kTable{{
    {FunctionId::sphere, "sphere", FunctionCategory::separable},
    {FunctionId::rastrigin_separable, "rastrigin-sep", FunctionCategory::separable},
    {FunctionId::rosenbrock, "rosenbrock", FunctionCategory::low_moderate_conditioning},
    {FunctionId::attractive_sector, "attractive-sector", FunctionCategory::low_moderate_conditioning},
    {FunctionId::ellipsoid_rotated, "ellipsoid-rot", FunctionCategory::high_conditioning_unimodal},
    {FunctionId::bent_cigar, "bent-cigar", FunctionCategory::high_conditioning_unimodal},
    {FunctionId::rastrigin_rotated, "rastrigin-rot", FunctionCategory::multimodal_adequate},
    {FunctionId::schaffers_f7, "schaffers-f7", FunctionCategory::multimodal_adequate},
    {FunctionId::schwefel, "schwefel", FunctionCategory::multimodal_weak},
    {FunctionId::lunacek, "lunacek", FunctionCategory::multimodal_weak},
}};

const FunctionInfo& info(FunctionId id) {
    for (const auto& f : kTable) {
        if (f.id == id) return f;
    }
    throw std::invalid_argument("unknown function id");
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double rastrigin(std::span<const double> z) {
    double sum = 10.0 * static_cast<double>(z.size());
    for (double v : z) sum += v * v - 10.0 * std::cos(kTwoPi * v);
    return sum;
}

double rosenbrock(std::span<const double> z) {
    if (z.size() == 1) {
        return z[0] * z[0];
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        const double a = z[i] + 1.0;
        const double b = z[i + 1] + 1.0;
        sum += 100.0 * (a * a - b) * (a * a - b) + z[i] * z[i];
    }
    return sum;
}

double schaffers_f7(std::span<const double> z) {
    auto term = [](double s) {
        const double root = std::sqrt(s);
        const double wave = std::sin(50.0 * std::pow(s, 0.2));
        return root + root * wave * wave;
    };
    if (z.size() == 1) {
        const double r = term(std::abs(z[0]));
        return r * r;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        sum += term(std::hypot(z[i], z[i + 1]));
    }
    const double mean = sum / static_cast<double>(z.size() - 1);
    return mean * mean;
}

// argmax of y*sin(sqrt|y|) on [-500, 500]
constexpr double kSchwefelPeak = 420.96874635998202731;

double schwefel(std::span<const double> z) {
    auto g = [](double y) { return y * std::sin(std::sqrt(std::abs(y))); };
    const double peak = g(kSchwefelPeak);
    double sum = 0.0;
    for (double v : z) {
        const double y = 100.0 * v + kSchwefelPeak;
        const double excess = std::max(0.0, std::abs(y) / 100.0 - 5.0);
        sum += std::max(0.0, (peak - g(y)) / 100.0) + 100.0 * excess * excess;
    }
    return sum;
}

double lunacek(std::span<const double> z) {
    const double t = static_cast<double>(z.size());
    constexpr double mu0 = 2.5;
    constexpr double depth = 1.0;
    const double s = 1.0 - 1.0 / (2.0 * std::sqrt(t + 20.0) - 8.2);
    const double mu1 = -std::sqrt((mu0 * mu0 - depth) / s);
    double near = 0.0, far = 0.0, ripple = 0.0;
    for (double v : z) {
        near += v * v;
        const double w = v + mu0 - mu1;
        far += w * w;
        ripple += 1.0 - std::cos(kTwoPi * v);
    }
    return std::min(near, depth * t + s * far) + 10.0 * ripple;
}

}  // namespace

std::string_view function_name(FunctionId id) { return info(id).name; }

FunctionId parse_function(std::string_view name) {
    for (const auto& f : kTable) {
        if (f.name == name) return f.id;
    }
    throw std::invalid_argument("unknown function id '" + std::string(name) + "'");
}

FunctionCategory category_of(FunctionId id) { return info(id).category; }

std::string_view category_name(FunctionCategory c) {
    switch (c) {
        case FunctionCategory::separable: return "separable";
        case FunctionCategory::low_moderate_conditioning: return "low-moderate-conditioning";
        case FunctionCategory::high_conditioning_unimodal: return "high-conditioning-unimodal";
        case FunctionCategory::multimodal_adequate: return "multimodal-adequate";
        case FunctionCategory::multimodal_weak: return "multimodal-weak";
    }
    throw std::invalid_argument("unknown category");
}

FunctionCategory parse_category(std::string_view name) {
    for (auto c : {FunctionCategory::separable, FunctionCategory::low_moderate_conditioning,
                   FunctionCategory::high_conditioning_unimodal, FunctionCategory::multimodal_adequate,
                   FunctionCategory::multimodal_weak}) {
        if (category_name(c) == name) return c;
    }
    throw std::invalid_argument("unknown function category '" + std::string(name) + "'");
}

double base_function(FunctionId id, std::span<const double> z) {
    switch (id) {
        case FunctionId::sphere: {
            double sum = 0.0;
            for (double v : z) sum += v * v;
            return sum;
        }
        case FunctionId::rastrigin_separable:
        case FunctionId::rastrigin_rotated:
            return rastrigin(z);
        case FunctionId::rosenbrock:
            return rosenbrock(z);
        case FunctionId::attractive_sector: {
            double sum = 0.0;
            for (double v : z) {
                const double s = v > 0.0 ? 100.0 : 1.0;
                sum += (s * v) * (s * v);
            }
            return sum;
        }
        case FunctionId::ellipsoid_rotated: {
            const std::size_t n = z.size();
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double exponent = n == 1 ? 0.0 : 6.0 * static_cast<double>(i) / static_cast<double>(n - 1);
                sum += std::pow(10.0, exponent) * z[i] * z[i];
            }
            return sum;
        }
        case FunctionId::bent_cigar: {
            double tail = 0.0;
            for (std::size_t i = 1; i < z.size(); ++i) tail += z[i] * z[i];
            return z[0] * z[0] + 1e6 * tail;
        }
        case FunctionId::schaffers_f7:
            return schaffers_f7(z);
        case FunctionId::schwefel:
            return schwefel(z);
        case FunctionId::lunacek:
            return lunacek(z);
    }
    throw std::invalid_argument("unknown function id");
}

ProblemInstance::ProblemInstance(FunctionId id, std::size_t dimension, std::vector<double> shift,
                                 std::vector<double> rotation)
    : id_(id), shift_(std::move(shift)), rotation_(std::move(rotation)), work_(dimension) {
    if (dimension == 0 || shift_.size() != dimension || rotation_.size() != dimension * dimension) {
        throw std::invalid_argument("inconsistent problem instance shape");
    }
}

std::string ProblemInstance::name() const {
    return std::string(function_name(id_)) + "-" + std::to_string(dimension()) + "d";
}

double ProblemInstance::objective(std::span<const double> x) const {
    const std::size_t n = shift_.size();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        const double* row = rotation_.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) acc += row[j] * (x[j] - shift_[j]);
        work_[i] = acc;
    }
    return base_function(id_, work_);
}

std::vector<double> random_rotation(std::size_t n, RngStream& rng) {
    // columns of a Gaussian matrix, orthonormalised (modified Gram-Schmidt);
    // positive diagonal of the implied R makes the result Haar-distributed
    std::vector<std::vector<double>> cols(n, std::vector<double>(n));
    for (auto& c : cols)
        for (auto& v : c) v = rng.normal();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += cols[j][i] * cols[k][i];
            for (std::size_t i = 0; i < n; ++i) cols[k][i] -= dot * cols[j][i];
        }
        double norm = 0.0;
        for (double v : cols[k]) norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : cols[k]) v /= norm;
    }
    std::vector<double> r(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r[i * n + j] = cols[j][i];
    return r;
}

double orthogonality_defect(std::span<const double> rotation, std::size_t n) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < n; ++k) dot += rotation[i * n + k] * rotation[j * n + k];
            worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

ProblemInstance make_instance(FunctionId id, std::size_t dimension, std::uint64_t instance_seed) {
    if (dimension == 0) {
        throw std::invalid_argument("dimension must be at least 1");
    }
    RngStream rng(derive_seed(instance_seed, {static_cast<std::uint64_t>(id), dimension}));
    std::vector<double> shift(dimension);
    for (double& v : shift) v = rng.uniform(-4.0, 4.0);

    std::vector<double> rotation;
    if (category_of(id) == FunctionCategory::separable) {
        rotation.assign(dimension * dimension, 0.0);
        for (std::size_t i = 0; i < dimension; ++i) rotation[i * dimension + i] = 1.0;
    } else {
        rotation = random_rotation(dimension, rng);
    }
    return ProblemInstance(id, dimension, std::move(shift), std::move(rotation));
}

}  // namespace genomap
