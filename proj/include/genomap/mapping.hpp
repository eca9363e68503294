#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "genomap/core.hpp"

namespace genomap {

enum class MappingKind { identity, expand, compress };

enum class Strategy {
    none,            // identity
    summation,       // expand
    multiplication,  // expand
    sequential,      // compress: contiguous digit blocks
    alternating,     // compress: interleaved digits
};

/// Which decoding turns a genotype into a phenotype.
///
/// Compact codes: `def`, `exp-s-<m>`, `exp-m-<m>`, `com-seq`, `com-alt`.
struct MappingSpec {
    MappingKind kind = MappingKind::identity;
    Strategy strategy = Strategy::none;
    int factor = 1;      // expansion factor, or originals per compressed gene
    int precision = 16;  // rendered fractional digits of a compressed gene

    static MappingSpec identity() { return {}; }
    static MappingSpec expand_sum(int m) { return {MappingKind::expand, Strategy::summation, m, 16}; }
    static MappingSpec expand_product(int m) {
        return {MappingKind::expand, Strategy::multiplication, m, 16};
    }
    static MappingSpec compress_sequential() {
        return {MappingKind::compress, Strategy::sequential, 2, 16};
    }
    static MappingSpec compress_alternating() {
        return {MappingKind::compress, Strategy::alternating, 2, 16};
    }

    /// Digits available to each original variable: ceil(p / m).
    int digits_per_variable() const { return (precision + factor - 1) / factor; }

    /// Throws std::invalid_argument if the combination is not supported.
    void validate() const;

    std::string code() const;

    friend bool operator==(const MappingSpec&, const MappingSpec&) = default;
};

MappingSpec parse_mapping_code(std::string_view code);

struct GenotypeLayout {
    std::size_t phenotype_length;
    std::size_t genotype_length;
    Bounds genotype_bounds;
};

GenotypeLayout layout(const MappingSpec& spec, std::size_t t, const Bounds& problem_bounds);

/// Decodes into a caller-owned buffer of length t; no allocation for
/// identity and expansion.
void decode_into(const MappingSpec& spec, std::span<const double> genes, const Bounds& problem_bounds,
                 std::span<double> phenotype);

std::vector<double> decode(const MappingSpec& spec, std::span<const double> genes, std::size_t t,
                           const Bounds& problem_bounds);

/// The first `precision` fractional decimal digits of a value in [0,1],
/// taken from its shortest round-trip rendering. 1.0 renders as all nines.
std::string fraction_digits(double gene, int precision);

/// Inverse of compression decoding (used by tests and tooling, never by the
/// optimizers). Each original is rounded to digits_per_variable() digits.
Genotype encode_compressed(const MappingSpec& spec, std::span<const double> phenotype,
                           const Bounds& problem_bounds);

}  // namespace genomap
