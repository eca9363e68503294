#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace genomap::stats {

/// Target ladder 10^2, 10^1.8, ..., 10^-8.
inline constexpr std::size_t kTargetCount = 51;
const std::array<double, kTargetCount>& ecdf_targets();

/// First evaluation (1-based) at which each target was reached; -1 if never.
using TargetHits = std::array<std::int64_t, kTargetCount>;

inline constexpr double kAlpha = 0.05;

enum class Direction {
    less,     // first sample stochastically smaller (better when minimizing)
    greater,  // first sample stochastically larger
};

/// One-sided Mann-Whitney U p-value. Exact permutation distribution (with
/// mid-ranks for ties) when min(n1, n2) <= 8, otherwise the tie-corrected
/// normal approximation with continuity correction.
double mann_whitney_one_sided(std::span<const double> a, std::span<const double> b, Direction direction);

struct SampleSet {
    std::string label;
    std::vector<double> values;
};

enum class Symbol { better, worse, equal };

struct StatVerdict {
    Symbol symbol;
    double p_better;
    double p_worse;

    /// "+", "-" or "="
    std::string text() const;
};

/// Two-step protocol at alpha = 0.05: test "better" first, and only if that
/// is not significant, test "worse".
StatVerdict verdict(std::span<const double> candidate, std::span<const double> reference);
StatVerdict verdict(const SampleSet& candidate, const SampleSet& reference);

double median(std::span<const double> values);
/// Population (divide-by-n) standard deviation.
double stddev(std::span<const double> values);

struct Summary {
    double median;
    std::size_t hits;
    double stddev;
};

/// Hits count values within 1e-8 of `optimum`.
Summary summarize(std::span<const double> values, double optimum = 0.0);

struct EcdfPoint {
    std::int64_t evaluations;
    double proportion;

    friend bool operator==(const EcdfPoint&, const EcdfPoint&) = default;
};

/// Fraction of (run, target) pairs reached by each evaluation count. Points
/// are emitted at evaluation 1, at every distinct first-hit evaluation, and
/// at `budget` when it lies beyond the last hit.
std::vector<EcdfPoint> ecdf(std::span<const TargetHits> runs, std::int64_t budget);

}  // namespace genomap::stats
