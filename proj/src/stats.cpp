#include "genomap/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace genomap::stats {

const std::array<double, kTargetCount>& ecdf_targets() {
    static const std::array<double, kTargetCount> targets = [] {
        std::array<double, kTargetCount> t{};
        for (std::size_t k = 0; k < kTargetCount; ++k) {
            // exponent (10 - k) / 5 is exact for the endpoints 2 and -8
            t[k] = std::pow(10.0, (10.0 - static_cast<double>(k)) / 5.0);
        }
        return t;
    }();
    return targets;
}

namespace {

void require_samples(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("Mann-Whitney test needs two non-empty samples");
    }
    for (double v : a)
        if (!std::isfinite(v)) throw std::invalid_argument("sample contains a non-finite value");
    for (double v : b)
        if (!std::isfinite(v)) throw std::invalid_argument("sample contains a non-finite value");
}

struct Ranked {
    std::vector<long> doubled;  // 2 * mid-rank, always an integer
    std::vector<std::size_t> tie_sizes;
};

Ranked doubled_midranks(const std::vector<double>& pooled) {
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });
    Ranked r;
    r.doubled.assign(n, 0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        // ranks i+1 .. j+1 share (i + 1 + j + 1) / 2
        const long twice = static_cast<long>(i + j + 2);
        for (std::size_t k = i; k <= j; ++k) r.doubled[order[k]] = twice;
        r.tie_sizes.push_back(j - i + 1);
        i = j + 1;
    }
    return r;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// P(sum over a random size-k subset <= threshold) and P(>= threshold), as
// counts over the subset-sum distribution of the doubled ranks.
std::vector<double> subset_sum_counts(const std::vector<long>& values, std::size_t k) {
    const long max_sum = std::accumulate(values.begin(), values.end(), 0L);
    std::vector<std::vector<double>> dp(k + 1, std::vector<double>(static_cast<std::size_t>(max_sum) + 1, 0.0));
    dp[0][0] = 1.0;
    for (long v : values) {
        for (std::size_t c = k; c >= 1; --c) {
            auto& row = dp[c];
            const auto& prev = dp[c - 1];
            for (long s = max_sum; s >= v; --s) {
                row[static_cast<std::size_t>(s)] += prev[static_cast<std::size_t>(s - v)];
            }
        }
    }
    return dp[k];
}

}  // namespace

double mann_whitney_one_sided(std::span<const double> a, std::span<const double> b, Direction direction) {
    require_samples(a, b);
    const std::size_t n1 = a.size();
    const std::size_t n2 = b.size();
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const Ranked ranked = doubled_midranks(pooled);

    long observed = 0;  // doubled rank sum of a
    for (std::size_t i = 0; i < n1; ++i) observed += ranked.doubled[i];

    if (std::min(n1, n2) <= 8) {
        const long total = std::accumulate(ranked.doubled.begin(), ranked.doubled.end(), 0L);
        // enumerate subsets of the smaller sample's size
        const bool use_a = n1 <= n2;
        const std::vector<double> counts = subset_sum_counts(ranked.doubled, use_a ? n1 : n2);
        double all = 0.0, tail = 0.0;
        for (std::size_t s = 0; s < counts.size(); ++s) {
            if (counts[s] == 0.0) continue;
            all += counts[s];
            const long sum_a = use_a ? static_cast<long>(s) : total - static_cast<long>(s);
            const bool in_tail = direction == Direction::less ? sum_a <= observed : sum_a >= observed;
            if (in_tail) tail += counts[s];
        }
        return std::min(1.0, tail / all);
    }

    const double dn1 = static_cast<double>(n1);
    const double dn2 = static_cast<double>(n2);
    const double n = dn1 + dn2;
    const double u = static_cast<double>(observed) / 2.0 - dn1 * (dn1 + 1.0) / 2.0;
    const double mean = dn1 * dn2 / 2.0;
    double tie_term = 0.0;
    for (std::size_t t : ranked.tie_sizes) {
        const double dt = static_cast<double>(t);
        tie_term += dt * dt * dt - dt;
    }
    const double var = dn1 * dn2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (var <= 0.0) {
        return 1.0;
    }
    const double sd = std::sqrt(var);
    if (direction == Direction::less) {
        return normal_cdf((u - mean + 0.5) / sd);
    }
    return normal_cdf(-(u - mean - 0.5) / sd);
}

std::string StatVerdict::text() const {
    switch (symbol) {
        case Symbol::better: return "+";
        case Symbol::worse: return "-";
        case Symbol::equal: return "=";
    }
    return "?";
}

StatVerdict verdict(std::span<const double> candidate, std::span<const double> reference) {
    StatVerdict v{Symbol::equal, 1.0, 1.0};
    v.p_better = mann_whitney_one_sided(candidate, reference, Direction::less);
    v.p_worse = mann_whitney_one_sided(candidate, reference, Direction::greater);
    if (v.p_better < kAlpha) {
        v.symbol = Symbol::better;
    } else if (v.p_worse < kAlpha) {
        v.symbol = Symbol::worse;
    }
    return v;
}

StatVerdict verdict(const SampleSet& candidate, const SampleSet& reference) {
    return verdict(std::span<const double>(candidate.values), std::span<const double>(reference.values));
}

double median(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("median of an empty sample");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    return n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

double stddev(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("standard deviation of an empty sample");
    }
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / n);
}

Summary summarize(std::span<const double> values, double optimum) {
    Summary s{median(values), 0, stddev(values)};
    for (double v : values) {
        if (v - optimum <= 1e-8) ++s.hits;
    }
    return s;
}

std::vector<EcdfPoint> ecdf(std::span<const TargetHits> runs, std::int64_t budget) {
    if (runs.empty()) {
        throw std::invalid_argument("ECDF needs at least one run");
    }
    std::vector<std::int64_t> hits;
    for (const TargetHits& run : runs) {
        for (std::int64_t e : run) {
            if (e >= 1) hits.push_back(e);
        }
    }
    std::sort(hits.begin(), hits.end());
    const double pairs = static_cast<double>(runs.size() * kTargetCount);

    std::vector<EcdfPoint> curve;
    auto reached_by = [&](std::int64_t e) {
        return static_cast<double>(std::upper_bound(hits.begin(), hits.end(), e) - hits.begin()) / pairs;
    };
    curve.push_back({1, reached_by(1)});
    for (std::size_t i = 0; i < hits.size(); ++i) {
        if (hits[i] <= 1 || (i > 0 && hits[i] == hits[i - 1])) continue;
        curve.push_back({hits[i], reached_by(hits[i])});
    }
    if (budget > curve.back().evaluations) {
        curve.push_back({budget, reached_by(budget)});
    }
    return curve;
}

}  // namespace genomap::stats
