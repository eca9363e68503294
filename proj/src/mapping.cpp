#include "genomap/mapping.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace genomap {

namespace {

double parse_fraction(std::string_view digits) {
    std::string text = "0.";
    text.append(digits);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::logic_error("malformed digit string: " + text);
    }
    return value;
}

// Digits assigned to original `j` of a group holding `count` originals.
std::string slice_digits(const MappingSpec& spec, const std::string& digits, int j, int count) {
    const int d = spec.digits_per_variable();
    const int m = spec.factor;
    std::string out;
    out.reserve(d);
    if (spec.strategy == Strategy::alternating && count == m) {
        for (int k = 0; k < d; ++k) {
            const std::size_t pos = static_cast<std::size_t>(j + k * m);
            out.push_back(pos < digits.size() ? digits[pos] : '0');
        }
    } else {
        // sequential, and the short final group of an odd-length phenotype
        for (int k = 0; k < d; ++k) {
            const std::size_t pos = static_cast<std::size_t>(j * d + k);
            out.push_back(pos < digits.size() ? digits[pos] : '0');
        }
    }
    return out;
}

void check_lengths(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw std::invalid_argument(std::string(what) + " length mismatch: expected " +
                                    std::to_string(want) + ", got " + std::to_string(got));
    }
}

}  // namespace

void MappingSpec::validate() const {
    switch (kind) {
        case MappingKind::identity:
            return;
        case MappingKind::expand:
            if (strategy != Strategy::summation && strategy != Strategy::multiplication) {
                throw std::invalid_argument("expansion needs summation or multiplication");
            }
            if (factor < 2) {
                throw std::invalid_argument("expansion factor must be at least 2");
            }
            return;
        case MappingKind::compress:
            if (strategy != Strategy::sequential && strategy != Strategy::alternating) {
                throw std::invalid_argument("compression needs sequential or alternating decoding");
            }
            if (factor != 2) {
                throw std::invalid_argument("compression supports only m = 2");
            }
            if (precision != 16) {
                throw std::invalid_argument("compression precision is fixed at 16 digits");
            }
            return;
    }
    throw std::invalid_argument("unknown mapping kind");
}

std::string MappingSpec::code() const {
    switch (kind) {
        case MappingKind::identity:
            return "def";
        case MappingKind::expand:
            return std::string(strategy == Strategy::summation ? "exp-s-" : "exp-m-") +
                   std::to_string(factor);
        case MappingKind::compress:
            return strategy == Strategy::sequential ? "com-seq" : "com-alt";
    }
    return "?";
}

MappingSpec parse_mapping_code(std::string_view code) {
    if (code == "def") return MappingSpec::identity();
    if (code == "com-seq") return MappingSpec::compress_sequential();
    if (code == "com-alt") return MappingSpec::compress_alternating();
    if (code.starts_with("exp-s-") || code.starts_with("exp-m-")) {
        const std::string_view digits = code.substr(6);
        int m = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
        if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty()) {
            MappingSpec spec = code[4] == 's' ? MappingSpec::expand_sum(m) : MappingSpec::expand_product(m);
            spec.validate();
            return spec;
        }
    }
    throw std::invalid_argument("unknown mapping code '" + std::string(code) + "'");
}

GenotypeLayout layout(const MappingSpec& spec, std::size_t t, const Bounds& problem_bounds) {
    spec.validate();
    if (t == 0) {
        throw std::invalid_argument("phenotype length must be at least 1");
    }
    const auto m = static_cast<std::size_t>(spec.factor);
    switch (spec.kind) {
        case MappingKind::identity:
            return {t, t, problem_bounds};
        case MappingKind::expand:
            return {t, t * m, problem_bounds};
        case MappingKind::compress:
            return {t, (t + m - 1) / m, Bounds(0.0, 1.0)};
    }
    throw std::invalid_argument("unknown mapping kind");
}

std::string fraction_digits(double gene, int precision) {
    if (!(gene >= 0.0 && gene <= 1.0)) {
        throw std::invalid_argument("compressed gene outside [0,1]: " + std::to_string(gene));
    }
    const auto p = static_cast<std::size_t>(precision);
    if (gene == 1.0) {
        return std::string(p, '9');
    }
    // fixed-notation shortest round trip; a value in [0,1) never needs more than ~1100 chars
    char buf[1200];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, gene, std::chars_format::fixed);
    if (ec != std::errc{}) {
        throw std::logic_error("failed to render compressed gene");
    }
    const std::string_view text(buf, static_cast<std::size_t>(end - buf));
    const auto dot = text.find('.');
    std::string digits = dot == std::string_view::npos ? std::string() : std::string(text.substr(dot + 1));
    digits.resize(p, '0');
    return digits;
}

void decode_into(const MappingSpec& spec, std::span<const double> genes, const Bounds& problem_bounds,
                 std::span<double> phenotype) {
    const std::size_t t = phenotype.size();
    const GenotypeLayout lay = layout(spec, t, problem_bounds);
    check_lengths(genes.size(), lay.genotype_length, "genotype");

    switch (spec.kind) {
        case MappingKind::identity:
            std::copy(genes.begin(), genes.end(), phenotype.begin());
            return;
        case MappingKind::expand: {
            const auto m = static_cast<std::size_t>(spec.factor);
            for (std::size_t i = 0; i < t; ++i) {
                const auto group = genes.subspan(i * m, m);
                double v;
                if (spec.strategy == Strategy::summation) {
                    v = 0.0;
                    for (double g : group) v += g;
                } else {
                    v = 1.0;
                    for (double g : group) v *= g;
                }
                phenotype[i] = clip(v, problem_bounds);
            }
            return;
        }
        case MappingKind::compress: {
            const auto m = static_cast<std::size_t>(spec.factor);
            for (std::size_t g = 0; g < genes.size(); ++g) {
                const std::string digits = fraction_digits(genes[g], spec.precision);
                const std::size_t first = g * m;
                const int count = static_cast<int>(std::min(m, t - first));
                for (int j = 0; j < count; ++j) {
                    const double u = parse_fraction(slice_digits(spec, digits, j, count));
                    phenotype[first + static_cast<std::size_t>(j)] =
                        problem_bounds.lower + u * problem_bounds.width();
                }
            }
            return;
        }
    }
}

std::vector<double> decode(const MappingSpec& spec, std::span<const double> genes, std::size_t t,
                           const Bounds& problem_bounds) {
    std::vector<double> phenotype(t);
    decode_into(spec, genes, problem_bounds, phenotype);
    return phenotype;
}

Genotype encode_compressed(const MappingSpec& spec, std::span<const double> phenotype,
                           const Bounds& problem_bounds) {
    spec.validate();
    if (spec.kind != MappingKind::compress) {
        throw std::invalid_argument("encode_compressed needs a compression mapping");
    }
    const GenotypeLayout lay = layout(spec, phenotype.size(), problem_bounds);
    const int d = spec.digits_per_variable();
    const auto m = static_cast<std::size_t>(spec.factor);
    const double scale = std::pow(10.0, d);
    const auto top = static_cast<long long>(scale) - 1;

    std::vector<double> genes(lay.genotype_length);
    for (std::size_t g = 0; g < genes.size(); ++g) {
        const std::size_t first = g * m;
        const std::size_t count = std::min(m, phenotype.size() - first);

        std::vector<long long> ideal(count);
        for (std::size_t j = 0; j < count; ++j) {
            const double x = phenotype[first + j];
            if (!problem_bounds.contains(x)) {
                throw std::invalid_argument("phenotype value outside bounds: " + std::to_string(x));
            }
            const double u = (x - problem_bounds.lower) / problem_bounds.width();
            ideal[j] = std::clamp(std::llround(u * scale), 0LL, top);
        }

        auto render = [&](const std::vector<long long>& blocks) {
            std::string digits(m * static_cast<std::size_t>(d), '0');
            for (std::size_t j = 0; j < count; ++j) {
                std::string block = std::to_string(blocks[j]);
                block.insert(0, static_cast<std::size_t>(d) - block.size(), '0');
                for (int k = 0; k < d; ++k) {
                    const std::size_t pos = (spec.strategy == Strategy::alternating && count == m)
                                                ? j + static_cast<std::size_t>(k) * m
                                                : j * static_cast<std::size_t>(d) + static_cast<std::size_t>(k);
                    digits[pos] = block[static_cast<std::size_t>(k)];
                }
            }
            digits.resize(static_cast<std::size_t>(spec.precision), '0');
            return digits;
        };
        auto error_of = [&](double gene) {
            const std::string rendered = fraction_digits(gene, spec.precision);
            // (worst, total) compared lexicographically
            std::pair<double, double> err{0.0, 0.0};
            for (std::size_t j = 0; j < count; ++j) {
                const double u = parse_fraction(
                    slice_digits(spec, rendered, static_cast<int>(j), static_cast<int>(count)));
                const double e = std::abs(problem_bounds.lower + u * problem_bounds.width() - phenotype[first + j]);
                err.first = std::max(err.first, e);
                err.second += e;
            }
            return err;
        };

        // 16 decimal places exceed double resolution above 0.5, so the ideal
        // digit string may have no double that renders as it. Try the digit
        // blocks one unit either side and nearby doubles; keep the closest.
        double best = 0.0;
        std::pair<double, double> best_err{std::numeric_limits<double>::infinity(), 0.0};
        const std::size_t combos = count == 1 ? 3 : 9;
        for (std::size_t combo = 0; combo < combos; ++combo) {
            std::vector<long long> blocks = ideal;
            std::size_t code = combo;
            for (std::size_t j = 0; j < count && j < 2; ++j) {
                blocks[j] = std::clamp(blocks[j] + static_cast<long long>(code % 3) - 1, 0LL, top);
                code /= 3;
            }
            const double nearest = parse_fraction(render(blocks));
            double lo = nearest, hi = nearest;
            for (int k = 0; k <= 2; ++k) {
                for (double c : {lo, hi}) {
                    if (!(c >= 0.0 && c <= 1.0)) continue;
                    const auto err = error_of(c);
                    if (err < best_err) {
                        best_err = err;
                        best = c;
                    }
                }
                lo = std::nextafter(lo, 0.0);
                hi = std::nextafter(hi, 1.0);
            }
        }
        genes[g] = best;
    }
    return Genotype(std::move(genes));
}

}  // namespace genomap
