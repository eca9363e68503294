#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace genomap {

/// Closed search interval shared by every coordinate.
struct Bounds {
    double lower;
    double upper;

    Bounds(double lo, double hi);

    double width() const noexcept { return upper - lower; }
    bool contains(double v) const noexcept { return v >= lower && v <= upper; }

    friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// Flat vector of finite reals manipulated by the optimizers.
class Genotype {
public:
    explicit Genotype(std::vector<double> genes);

    std::size_t size() const noexcept { return genes_.size(); }
    double operator[](std::size_t i) const { return genes_[i]; }
    std::span<const double> genes() const noexcept { return genes_; }

    friend bool operator==(const Genotype&, const Genotype&) = default;

private:
    std::vector<double> genes_;
};

/// SplitMix64 finalizer; used to derive independent seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Folds a list of indices into a seed: derive_seed(master, {cell, instance}).
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) noexcept;

/// Deterministic random stream: mt19937_64 with hand-written conversions.
///
/// The standard library's distributions are implementation-defined, so all
/// conversions from raw 64-bit words to reals and indices live here and are
/// identical on every platform.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform01();
    /// Uniform in [lo, hi].
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n); n must be positive.
    std::size_t index(std::size_t n);
    bool bernoulli(double p) { return uniform01() < p; }
    /// Standard normal (Marsaglia polar method).
    double normal();

    /// Independent child stream for sub-task `i`.
    RngStream split(std::uint64_t i) const { return RngStream(derive_seed(seed_, {i})); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

Genotype uniform_genotype(std::size_t length, const Bounds& bounds, RngStream& rng);

/// Clamp into bounds. NaN is rejected rather than clamped.
double clip(double value, const Bounds& bounds);

}  // namespace genomap
