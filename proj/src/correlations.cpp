#include "qhardy/correlations.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qhardy {

namespace {

double link_probability(const StateVector& state, Theta theta, SettingLabel cond_s,
                        Outcome cond_o, SettingLabel target_s, Outcome target_o) {
    return conditional_probability(state, measurement(cond_s, cond_o, theta),
                                   measurement(target_s, target_o, theta));
}

void require_enumeration_domain(Theta theta) {
    if (theta.value() <= 0.0)
        throw DomainError("enumeration requires theta in (0, pi/2), got " +
                          std::to_string(theta.value()));
}

}  // namespace

ChainReport chain_report(Theta theta) {
    const StateVector state = hardy_state(theta);
    constexpr Outcome plus = Outcome::Plus;

    auto link = [&](SettingLabel from, SettingLabel to) {
        return ChainLink{from, plus, to, plus, link_probability(state, theta, from, plus, to, plus)};
    };

    ChainReport report{
        {link(SettingLabel::L1, SettingLabel::R2), link(SettingLabel::R2, SettingLabel::L2),
         link(SettingLabel::L2, SettingLabel::R1)},
        SettingLabel::R1,
        plus,
        link_probability(state, theta, SettingLabel::L1, plus, SettingLabel::R1, plus),
        0.0};
    report.discrepancy = 1.0 - report.quantum_conditional;
    return report;
}

std::vector<HiddenAssignment> admissible_assignments(Theta theta, double eps) {
    require_enumeration_domain(theta);
    const StateVector state = hardy_state(theta);

    // Precompute all four cross-wing tables once.
    const SettingLabel lefts[] = {SettingLabel::L1, SettingLabel::L2};
    const SettingLabel rights[] = {SettingLabel::R1, SettingLabel::R2};
    double table[2][2][2][2];  // [left setting][right setting][left outcome][right outcome]
    for (int ls = 0; ls < 2; ++ls)
        for (int rs = 0; rs < 2; ++rs) {
            auto obs_l = setting_observable(lefts[ls], theta).second;
            auto obs_r = setting_observable(rights[rs], theta).second;
            auto dist = joint_distribution(state, obs_l, obs_r);
            for (Outcome l : {Outcome::Plus, Outcome::Minus})
                for (Outcome r : {Outcome::Plus, Outcome::Minus})
                    table[ls][rs][outcome_index(l)][outcome_index(r)] = dist.prob(l, r);
        }

    const Outcome order[] = {Outcome::Plus, Outcome::Minus};
    std::vector<HiddenAssignment> result;
    for (Outcome l1 : order)
        for (Outcome l2 : order)
            for (Outcome r1 : order)
                for (Outcome r2 : order) {
                    const Outcome left[] = {l1, l2};
                    const Outcome right[] = {r1, r2};
                    bool ok = true;
                    for (int ls = 0; ls < 2 && ok; ++ls)
                        for (int rs = 0; rs < 2 && ok; ++rs)
                            ok = table[ls][rs][outcome_index(left[ls])][outcome_index(right[rs])] >
                                 eps;
                    if (ok) result.push_back(HiddenAssignment{{l1, l2, r1, r2}});
                }
    return result;
}

HardyContradictionReport hardy_contradiction(Theta theta, double eps) {
    require_enumeration_domain(theta);
    HardyContradictionReport report{admissible_assignments(theta, eps), 0.0, false};
    report.qm_event_probability = joint_probability(hardy_state(theta), sigma_z(), sigma_z(),
                                                    Outcome::Plus, Outcome::Minus);
    for (const HiddenAssignment& v : report.admissible)
        if (v.value(SettingLabel::L1) == Outcome::Plus && v.value(SettingLabel::R1) == Outcome::Minus)
            report.hv_event_possible = true;
    return report;
}

}  // namespace qhardy
