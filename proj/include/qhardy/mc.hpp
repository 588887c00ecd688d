#pragma once

// Seeded Monte Carlo sampling of joint outcomes for empirical confirmation
// of the analytic tables. Reproducibility contract: identical (state,
// settings, n, seed) inputs produce bit-identical counts on every platform.

#include <cstdint>
#include <vector>

#include "qhardy/qcore.hpp"

namespace qhardy {

// SplitMix64: 64-bit state advances by the golden-gamma increment
// 0x9E3779B97F4A7C15; output mixes the state with two xor-multiply rounds
// (0xBF58476D1CE4E5B9, 0x94D049BB133111EB) and a final xor-shift. Chosen over
// the platform default so seeds mean the same thing everywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) from the top 53 bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

struct SampleCounts {
    std::uint64_t n;
    std::array<std::uint64_t, 4> counts;  // order (+,+), (+,-), (-,+), (-,-)
    std::uint64_t seed;
    SpinObservable left;
    SpinObservable right;

    std::uint64_t count(Outcome l, Outcome r) const {
        return counts[2 * outcome_index(l) + outcome_index(r)];
    }
};

// n draws by inverse CDF over the four cells in the fixed order
// (+,+), (+,-), (-,+), (-,-). Cells with analytic probability below 1e-12
// are excluded from the CDF outright, so they can never receive a count.
// Requires n >= 1 (DomainError otherwise).
SampleCounts sample_joint(const StateVector& state, const SpinObservable& obs_left,
                          const SpinObservable& obs_right, std::uint64_t n, std::uint64_t seed);

struct CellStat {
    Outcome left;
    Outcome right;
    std::uint64_t count;
    double frequency;
    double analytic_p;
    double z;  // (freq - p) / sqrt(p(1-p)/n); +inf sentinel when p in {0,1} and freq differs
};

// Per-cell comparison of sampled frequencies against an analytic table.
// Throws DomainError when the settings of the two arguments differ.
std::vector<CellStat> frequency_report(const SampleCounts& counts,
                                       const JointDistribution& analytic);

}  // namespace qhardy
