#pragma once

// The perfect-correlation chain L1=+ -> R2=+ -> L2=+ -> R1=+, the gap between
// its conclusion and the quantum conditional, and the exhaustive
// hidden-assignment enumeration that exhibits the same clash combinatorially.

#include <array>
#include <vector>

#include "qhardy/hardy.hpp"

namespace qhardy {

struct ChainLink {
    SettingLabel condition_setting;
    Outcome condition_outcome;
    SettingLabel target_setting;
    Outcome target_outcome;
    double probability;  // P(target | condition)
};

struct ChainReport {
    std::array<ChainLink, 3> links;   // L1+ -> R2+, R2+ -> L2+, L2+ -> R1+
    SettingLabel conclusion_setting;  // R1
    Outcome conclusion_outcome;       // +
    double quantum_conditional;       // P(R1=+ | L1=+)
    double discrepancy;               // 1 - quantum_conditional
};

// Throws UndefinedConditionalError when P(L1=+) vanishes (|theta| at the
// domain edge).
ChainReport chain_report(Theta theta);

// A total outcome assignment to all four settings.
struct HiddenAssignment {
    std::array<Outcome, 4> values;  // indexed by SettingLabel order L1, L2, R1, R2

    Outcome value(SettingLabel s) const { return values[static_cast<std::size_t>(s)]; }
    bool operator==(const HiddenAssignment&) const = default;
};

// All assignments whose four selected cross-wing cells each carry Born
// probability > eps, in lexicographic order over (L1, L2, R1, R2) with
// + before -. Throws DomainError unless theta is in (0, pi/2).
std::vector<HiddenAssignment> admissible_assignments(Theta theta, double eps = kConditionEpsilon);

struct HardyContradictionReport {
    std::vector<HiddenAssignment> admissible;
    double qm_event_probability;  // P(L1=+, R1=-), positive on (0, pi/2)
    bool hv_event_possible;       // some admissible assignment has L1=+, R1=-
};

HardyContradictionReport hardy_contradiction(Theta theta, double eps = kConditionEpsilon);

}  // namespace qhardy
