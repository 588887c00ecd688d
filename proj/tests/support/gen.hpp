#pragma once

// Seeded random structures shared by the unit and acceptance suites:
// grammar-directed formula trees and loosely sensible derivations. The
// derivations are well-formed (parseable, valid references) but deliberately
// mix sound and unsound rule applications.

#include <numbers>
#include <vector>

#include "qhardy/cfl/formula.hpp"
#include "qhardy/mc.hpp"

namespace qhardy::testgen {

inline SettingLabel random_setting(SplitMix64& rng) {
    return kAllSettings[rng.next() % 4];
}

inline OutcomeLabel random_outcome_label(SplitMix64& rng) {
    return kAllOutcomeLabels[rng.next() % 8];
}

inline cfl::FormulaPtr random_formula(SplitMix64& rng, int depth) {
    const std::uint64_t roll = rng.next() % 100;
    if (depth <= 0 || roll < 20) {
        return roll % 2 == 0 ? cfl::make_setting(random_setting(rng))
                             : cfl::make_outcome(random_outcome_label(rng));
    }
    if (roll < 40) return cfl::make_outcome(random_outcome_label(rng));
    if (roll < 65)
        return cfl::make_and(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    if (roll < 85)
        return cfl::make_implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    return cfl::make_box(random_setting(rng), random_formula(rng, depth - 1));
}

// A premise describing one plausible run; some include outcomes on both wings.
inline cfl::FormulaPtr random_premise(SplitMix64& rng) {
    using namespace cfl;
    switch (rng.next() % 6) {
        case 0:
            return make_conjunction({make_setting(SettingLabel::L2), make_setting(SettingLabel::R2),
                                     make_outcome(OutcomeLabel::g)});
        case 1:
            return make_conjunction({make_setting(SettingLabel::L2), make_setting(SettingLabel::R2),
                                     make_outcome(OutcomeLabel::c)});
        case 2:
            return make_conjunction({make_setting(SettingLabel::L1), make_setting(SettingLabel::R2),
                                     make_outcome(OutcomeLabel::b)});
        case 3:
            return make_conjunction({make_setting(SettingLabel::L1), make_setting(SettingLabel::R1),
                                     make_outcome(OutcomeLabel::b), make_outcome(OutcomeLabel::f)});
        case 4:
            return make_conjunction({make_setting(SettingLabel::L2), make_setting(SettingLabel::R1),
                                     make_outcome(OutcomeLabel::c)});
        default:
            return make_conjunction({make_setting(SettingLabel::L1), make_setting(SettingLabel::R2),
                                     make_outcome(OutcomeLabel::g)});
    }
}

inline cfl::Derivation random_derivation(SplitMix64& rng) {
    using namespace cfl;
    constexpr double pi = std::numbers::pi;
    const double thetas[] = {pi / 6, pi / 4, pi / 3, 0.9, 1.2};
    Derivation d{Theta(thetas[rng.next() % 5]), {}};
    d.steps.push_back(Step{1, random_premise(rng), RuleKind::Premise, {}});

    const int extra = 1 + static_cast<int>(rng.next() % 4);
    for (int k = 0; k < extra; ++k) {
        const int index = static_cast<int>(d.steps.size()) + 1;
        const int ref = 1 + static_cast<int>(rng.next() % d.steps.size());
        const FormulaPtr base = d.steps[static_cast<std::size_t>(ref) - 1].formula;
        Step step{index, base, RuleKind::Logic, {ref}};

        switch (rng.next() % 6) {
            case 0: {  // QM: append a random outcome letter
                FormulaPtr added = make_outcome(random_outcome_label(rng));
                step.formula = base->kind == Formula::Kind::BoxArrow
                                   ? make_box(base->setting, make_and(base->rhs, added))
                                   : make_and(base, added);
                step.rule = RuleKind::QM;
                break;
            }
            case 1: {  // LOC1-shaped counterfactual replacement
                auto items = conjuncts(base);
                SettingLabel replaced = random_setting(rng);
                std::vector<FormulaPtr> scope;
                for (const auto& item : items) {
                    if (item->kind == Formula::Kind::Setting && item->setting == replaced) continue;
                    if (item->kind == Formula::Kind::Outcome &&
                        setting_of(item->outcome) == replaced)
                        continue;
                    scope.push_back(item);
                }
                SettingLabel replacement = other_setting_on_side(replaced);
                scope.push_back(make_setting(replacement));
                step.formula = make_box(replacement, make_conjunction(scope));
                step.rule = RuleKind::Loc1;
                break;
            }
            case 2: {  // weakening: drop one top-level conjunct when possible
                auto items = conjuncts(base);
                if (items.size() > 1) items.erase(items.begin() + static_cast<long>(rng.next() % items.size()));
                step.formula = make_conjunction(items);
                break;
            }
            case 3: {  // conjunction of two earlier steps
                int other = 1 + static_cast<int>(rng.next() % d.steps.size());
                std::vector<FormulaPtr> pooled;
                for (int r : {ref, other})
                    for (const auto& item : conjuncts(d.steps[static_cast<std::size_t>(r) - 1].formula)) {
                        bool seen = false;
                        for (const auto& p : pooled) seen = seen || equals_mod_order(p, item);
                        if (!seen) pooled.push_back(item);
                    }
                step.formula = make_conjunction(pooled);
                step.refs = {ref, other};
                break;
            }
            case 4: {  // conditionalize on a present setting atom when possible
                auto items = conjuncts(base);
                FormulaPtr chosen;
                for (const auto& item : items)
                    if (item->kind == Formula::Kind::Setting && !chosen) chosen = item;
                if (chosen) {
                    std::vector<FormulaPtr> rest;
                    for (const auto& item : items)
                        if (item != chosen) rest.push_back(item);
                    if (!rest.empty()) {
                        step.formula = make_implies(chosen, make_conjunction(rest));
                        break;
                    }
                }
                break;  // fall back to identity restatement
            }
            default: {  // LOC2-shaped generalization when the ref is an implication
                if (base->kind == Formula::Kind::Implies &&
                    base->lhs->kind == Formula::Kind::Setting) {
                    step.formula =
                        make_implies(make_setting(other_setting_on_side(base->lhs->setting)),
                                     base->rhs);
                    step.rule = RuleKind::Loc2;
                }
                break;  // otherwise identity restatement
            }
        }
        d.steps.push_back(std::move(step));
    }
    return d;
}

}  // namespace qhardy::testgen
