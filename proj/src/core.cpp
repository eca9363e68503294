#include "genomap/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace genomap {

Bounds::Bounds(double lo, double hi) : lower(lo), upper(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw std::invalid_argument("bounds require finite lower < upper");
    }
}

Genotype::Genotype(std::vector<double> genes) : genes_(std::move(genes)) {
    if (genes_.empty()) {
        throw std::invalid_argument("genotype length must be at least 1");
    }
    for (std::size_t i = 0; i < genes_.size(); ++i) {
        if (!std::isfinite(genes_[i])) {
            throw std::invalid_argument("genotype gene " + std::to_string(i) + " is not finite");
        }
    }
}

std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t s = mix_seed(base);
    for (std::uint64_t p : path) {
        s = mix_seed(s ^ mix_seed(p + 0x632be59bd9b4e019ULL));
    }
    return s;
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RngStream::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    const double v = lo + (hi - lo) * uniform01();
    return std::min(std::max(v, lo), hi);
}

std::size_t RngStream::index(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("index range must be positive");
    }
    const std::uint64_t range = n;
    // reject the incomplete top block so every residue is equally likely
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % range);
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

Genotype uniform_genotype(std::size_t length, const Bounds& bounds, RngStream& rng) {
    if (length == 0) {
        throw std::invalid_argument("genotype length must be at least 1");
    }
    std::vector<double> genes(length);
    for (auto& g : genes) {
        g = rng.uniform(bounds.lower, bounds.upper);
    }
    return Genotype(std::move(genes));
}

double clip(double value, const Bounds& bounds) {
    if (std::isnan(value)) {
        throw std::invalid_argument("cannot clip NaN");
    }
    return std::min(bounds.upper, std::max(bounds.lower, value));
}

}  // namespace genomap
