#include "genomap/puf.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace genomap::puf {

std::vector<double> phi_transform(const Challenge& challenge) {
    const std::size_t n = challenge.size();
    std::vector<double> phi(n + 1, 1.0);
    double suffix = 1.0;
    for (std::size_t i = n; i-- > 0;) {
        if (challenge.bits[i]) suffix = -suffix;
        phi[i] = suffix;
    }
    return phi;
}

int respond(std::span<const double> w, const Challenge& challenge) {
    const std::vector<double> phi = phi_transform(challenge);
    if (w.size() != phi.size()) {
        throw std::invalid_argument("delay vector must have n + 1 entries");
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) dot += w[i] * phi[i];
    return dot > 0.0 ? 0 : 1;
}

std::pair<CrpSet, DelayVector> generate_crps(std::size_t n, std::size_t count, RngStream& rng) {
    if (n == 0 || count == 0) {
        throw std::invalid_argument("chain length and CRP count must be positive");
    }
    DelayVector w(n + 1);
    for (double& v : w) v = rng.normal();

    CrpSet set;
    set.n = n;
    set.challenges.reserve(count);
    set.responses.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        Challenge c;
        c.bits.resize(n);
        for (auto& b : c.bits) b = static_cast<std::uint8_t>(rng.next_u64() >> 63);
        set.responses.push_back(static_cast<std::uint8_t>(respond(w, c)));
        set.challenges.push_back(std::move(c));
    }
    return {std::move(set), std::move(w)};
}

std::size_t puf_fitness(std::span<const double> candidate, const CrpSet& crps) {
    if (candidate.size() != crps.n + 1) {
        throw std::invalid_argument("candidate must have n + 1 = " + std::to_string(crps.n + 1) +
                                    " entries, got " + std::to_string(candidate.size()));
    }
    std::size_t wrong = 0;
    for (std::size_t k = 0; k < crps.size(); ++k) {
        if (respond(candidate, crps.challenges[k]) != crps.responses[k]) ++wrong;
    }
    return wrong;
}

void write_crps_csv(std::ostream& out, const CrpSet& crps) {
    for (std::size_t i = 1; i <= crps.n; ++i) out << 'c' << i << ',';
    out << "r\n";
    for (std::size_t k = 0; k < crps.size(); ++k) {
        for (auto b : crps.challenges[k].bits) out << static_cast<int>(b) << ',';
        out << static_cast<int>(crps.responses[k]) << '\n';
    }
}

CrpSet read_crps_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("empty CRP file");
    }
    CrpSet set;
    std::size_t columns = 1;
    for (char ch : line) columns += ch == ',' ? 1 : 0;
    if (columns < 2) {
        throw std::invalid_argument("CRP header needs challenge columns and r");
    }
    set.n = columns - 1;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string cell;
        std::vector<std::uint8_t> values;
        while (std::getline(fields, cell, ',')) {
            if (cell != "0" && cell != "1") {
                throw std::invalid_argument("CRP row " + std::to_string(row) + ": expected 0 or 1");
            }
            values.push_back(static_cast<std::uint8_t>(cell[0] - '0'));
        }
        if (values.size() != columns) {
            throw std::invalid_argument("CRP row " + std::to_string(row) + ": wrong column count");
        }
        set.responses.push_back(values.back());
        values.pop_back();
        set.challenges.push_back(Challenge{std::move(values)});
    }
    return set;
}

PufProblem::PufProblem(CrpSet crps) : crps_(std::move(crps)), chunks_((crps_.n + 1 + 7) / 8) {
    if (crps_.n == 0 || crps_.size() == 0) {
        throw std::invalid_argument("PUF problem needs a non-empty CRP set");
    }
    packed_.assign(crps_.size() * chunks_, 0);
    for (std::size_t k = 0; k < crps_.size(); ++k) {
        if (crps_.challenges[k].size() != crps_.n) {
            throw std::invalid_argument("CRP challenge length differs from chain length");
        }
        const std::vector<double> phi = phi_transform(crps_.challenges[k]);
        for (std::size_t i = 0; i < phi.size(); ++i) {
            if (phi[i] < 0.0) packed_[k * chunks_ + i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
        }
    }
    tables_.assign(chunks_ * 256, 0.0);
}

std::string PufProblem::name() const {
    return "puf-" + std::to_string(crps_.n) + "-" + std::to_string(crps_.size());
}

double PufProblem::objective(std::span<const double> w) const {
    const std::size_t features = crps_.n + 1;
    for (std::size_t c = 0; c < chunks_; ++c) {
        double* table = tables_.data() + c * 256;
        const std::size_t first = c * 8;
        const std::size_t width = std::min<std::size_t>(8, features - first);
        double base = 0.0;
        for (std::size_t i = 0; i < width; ++i) base += w[first + i];
        table[0] = base;
        for (unsigned b = 1; b < 256; ++b) {
            const unsigned low = static_cast<unsigned>(__builtin_ctz(b));
            // bits beyond the chunk width never occur in packed data
            const double wi = low < width ? w[first + low] : 0.0;
            table[b] = table[b & (b - 1)] - 2.0 * wi;
        }
    }
    std::size_t wrong = 0;
    for (std::size_t k = 0; k < crps_.size(); ++k) {
        const std::uint8_t* bytes = packed_.data() + k * chunks_;
        double dot = 0.0;
        for (std::size_t c = 0; c < chunks_; ++c) dot += tables_[c * 256 + bytes[c]];
        const std::uint8_t r = dot > 0.0 ? 0 : 1;
        wrong += r != crps_.responses[k] ? 1 : 0;
    }
    return static_cast<double>(wrong);
}

}  // namespace genomap::puf
