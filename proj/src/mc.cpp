#include "qhardy/mc.hpp"

#include <cmath>
#include <limits>

namespace qhardy {

namespace {
constexpr double kZeroCell = 1e-12;
}

SampleCounts sample_joint(const StateVector& state, const SpinObservable& obs_left,
                          const SpinObservable& obs_right, std::uint64_t n, std::uint64_t seed) {
    if (n < 1) throw DomainError("sample size must be >= 1");
    const JointDistribution dist = joint_distribution(state, obs_left, obs_right);

    // Cumulative bounds; zero cells get empty intervals, the last live cell
    // absorbs rounding so every u in [0, 1) lands somewhere.
    std::array<double, 4> upper{};
    double cum = 0.0;
    int last_live = -1;
    for (int i = 0; i < 4; ++i) {
        if (dist.p[i] >= kZeroCell) {
            cum += dist.p[i];
            last_live = i;
        }
        upper[i] = cum;
    }
    if (last_live >= 0) upper[last_live] = 1.0;
    for (int i = last_live + 1; i < 4; ++i) upper[i] = 1.0;

    // First matching interval wins; zero cells have empty intervals and can
    // never match.
    SampleCounts out{n, {0, 0, 0, 0}, seed, obs_left, obs_right};
    SplitMix64 rng(seed);
    for (std::uint64_t k = 0; k < n; ++k) {
        double u = rng.next_double();
        for (int i = 0; i < 4; ++i) {
            if (u < upper[i]) {
                ++out.counts[i];
                break;
            }
        }
    }
    return out;
}

std::vector<CellStat> frequency_report(const SampleCounts& counts,
                                       const JointDistribution& analytic) {
    if (counts.left.phi() != analytic.left.phi() || counts.right.phi() != analytic.right.phi())
        throw DomainError("sample counts and analytic table have different settings");

    std::vector<CellStat> out;
    out.reserve(4);
    const double n = static_cast<double>(counts.n);
    for (Outcome l : {Outcome::Plus, Outcome::Minus})
        for (Outcome r : {Outcome::Plus, Outcome::Minus}) {
            CellStat cell{l, r, counts.count(l, r), 0.0, analytic.prob(l, r), 0.0};
            cell.frequency = static_cast<double>(cell.count) / n;
            if (cell.analytic_p > 0.0 && cell.analytic_p < 1.0) {
                cell.z = (cell.frequency - cell.analytic_p) /
                         std::sqrt(cell.analytic_p * (1.0 - cell.analytic_p) / n);
            } else {
                cell.z = cell.frequency == cell.analytic_p
                             ? 0.0
                             : std::numeric_limits<double>::infinity();
            }
            out.push_back(cell);
        }
    return out;
}

}  // namespace qhardy
