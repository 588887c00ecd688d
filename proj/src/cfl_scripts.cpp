#include "qhardy/cfl/scripts.hpp"

namespace qhardy::cfl {

namespace {

FormulaPtr conj(std::initializer_list<FormulaPtr> parts) {
    return make_conjunction(std::vector<FormulaPtr>(parts));
}

Derivation script_a(Theta theta) {
    const auto L2 = make_setting(SettingLabel::L2);
    const auto R1 = make_setting(SettingLabel::R1);
    const auto R2 = make_setting(SettingLabel::R2);
    const auto g = make_outcome(OutcomeLabel::g);
    const auto c = make_outcome(OutcomeLabel::c);
    const auto f = make_outcome(OutcomeLabel::f);

    return Derivation{
        theta,
        {
            {1, conj({L2, R2, g}), RuleKind::Premise, {}},
            {2, conj({L2, R2, g, c}), RuleKind::QM, {1}},
            {3, make_box(SettingLabel::R1, conj({L2, R1, c})), RuleKind::Loc1, {2}},
            {4, make_box(SettingLabel::R1, conj({L2, R1, c, f})), RuleKind::QM, {3}},
        }};
}

Derivation script_b(Theta theta) {
    const auto L1 = make_setting(SettingLabel::L1);
    const auto L2 = make_setting(SettingLabel::L2);
    const auto R1 = make_setting(SettingLabel::R1);
    const auto R2 = make_setting(SettingLabel::R2);
    const auto c = make_outcome(OutcomeLabel::c);
    const auto f = make_outcome(OutcomeLabel::f);

    return Derivation{
        theta,
        {
            {1, conj({L2, R2, c}), RuleKind::Premise, {}},
            {2, make_box(SettingLabel::R1, conj({L2, R1, c})), RuleKind::Loc1, {1}},
            {3, make_box(SettingLabel::R1, conj({L2, R1, c, f})), RuleKind::QM, {2}},
            {4, make_box(SettingLabel::R1, conj({L2, R1, f})), RuleKind::Logic, {3}},
            {5, make_implies(L2, make_box(SettingLabel::R1, conj({R1, f}))), RuleKind::Logic, {4}},
            {6, make_implies(L1, make_box(SettingLabel::R1, conj({R1, f}))), RuleKind::Loc2, {5}},
        }};
}

}  // namespace

std::map<std::string, Derivation> builtin_scripts(Theta theta) {
    return {{"stapp-A", script_a(theta)}, {"stapp-B", script_b(theta)}};
}

}  // namespace qhardy::cfl
