#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "genomap/problem.hpp"

namespace genomap::puf {

struct Challenge {
    std::vector<std::uint8_t> bits;  // each 0 or 1

    std::size_t size() const noexcept { return bits.size(); }
};

/// Additive delay model: n + 1 weights for an n-stage chain.
using DelayVector = std::vector<double>;

struct CrpSet {
    std::size_t n = 0;
    std::vector<Challenge> challenges;
    std::vector<std::uint8_t> responses;

    std::size_t size() const noexcept { return challenges.size(); }
};

/// phi_i = prod_{l=i..n} (-1)^{c_l} for i = 1..n, phi_{n+1} = 1.
std::vector<double> phi_transform(const Challenge& challenge);

/// 1 if w . phi < 0, else 0. An exact zero answers 1.
int respond(std::span<const double> w, const Challenge& challenge);

/// Hidden weights are i.i.d. standard normal, challenges uniform bit strings.
std::pair<CrpSet, DelayVector> generate_crps(std::size_t n, std::size_t count, RngStream& rng);

/// Number of pairs whose stored response the candidate model gets wrong.
std::size_t puf_fitness(std::span<const double> candidate, const CrpSet& crps);

void write_crps_csv(std::ostream& out, const CrpSet& crps);
CrpSet read_crps_csv(std::istream& in);

/// Modelling attack objective on [-5, 5]^{n+1}.
///
/// Feature signs are packed into bytes once; each evaluation builds 256-entry
/// partial-sum tables per byte so a dot product is one lookup per 8 stages.
/// Summation order differs from respond(), so the two can disagree only
/// when |w . phi| is at rounding level.
class PufProblem final : public Problem {
public:
    explicit PufProblem(CrpSet crps);

    std::size_t dimension() const override { return crps_.n + 1; }
    Bounds bounds() const override { return Bounds(-5.0, 5.0); }
    std::string name() const override;

    const CrpSet& crps() const noexcept { return crps_; }

protected:
    double objective(std::span<const double> w) const override;

private:
    CrpSet crps_;
    std::size_t chunks_;
    std::vector<std::uint8_t> packed_;  // size() * chunks_ bytes, bit set where phi = -1
    mutable std::vector<double> tables_;
};

}  // namespace genomap::puf
