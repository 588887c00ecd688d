#include "qhardy/cfl/checker.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qhardy/hardy.hpp"

namespace qhardy::cfl {

const char* to_string(Semantics s) {
    return s == Semantics::Realist ? "realist" : "operational";
}

bool EvidenceSet::add(SettingLabel s, Outcome o) {
    auto [it, inserted] = pairs_.emplace(s, o);
    return inserted || it->second == o;
}

bool EvidenceSet::merge(const EvidenceSet& other) {
    for (const auto& [s, o] : other.pairs_)
        if (!add(s, o)) return false;
    return true;
}

bool certify_qm_implication(Theta theta, std::pair<SettingLabel, Outcome> from,
                            std::pair<SettingLabel, Outcome> to) {
    if (side_of(from.first) == side_of(to.first))
        throw DomainError("QM certification requires measurements on opposite wings");
    double p = conditional_probability(hardy_state(theta),
                                       measurement(from.first, from.second, theta),
                                       measurement(to.first, to.second, theta));
    return std::abs(p - 1.0) <= 1e-9;
}

namespace {

// Internal control flow: a rule application that failed semantically.
struct RuleFailure {
    std::string reason;
};

bool is_setting_atom(const FormulaPtr& f, SettingLabel s) {
    return f->kind == Formula::Kind::Setting && f->setting == s;
}

bool contains_item(const std::vector<FormulaPtr>& items, const FormulaPtr& f) {
    return std::any_of(items.begin(), items.end(),
                       [&](const FormulaPtr& x) { return equals_mod_order(x, f); });
}

bool atoms_only(const std::vector<FormulaPtr>& items) {
    return std::all_of(items.begin(), items.end(),
                       [](const FormulaPtr& f) { return is_atom(*f); });
}

// items_a == items_b as multisets under equals_mod_order.
bool same_conj_set(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& ia : a) {
        bool matched = false;
        for (std::size_t j = 0; j < b.size() && !matched; ++j)
            if (!used[j] && equals_mod_order(ia, b[j])) used[j] = matched = true;
        if (!matched) return false;
    }
    return true;
}

// Measurement context established by premise steps; one run of the
// experiment has at most one setting and one measured outcome per wing.
struct PremiseContext {
    std::map<Side, SettingLabel> setting;
    std::map<Side, OutcomeLabel> outcome;
};

class Checker {
public:
    Checker(const Derivation& d, Semantics semantics) : d_(d), semantics_(semantics) {}

    Verdict run(std::vector<StepAnnotations>& trace) {
        trace.clear();
        Verdict verdict;
        for (const Step& step : d_.steps) {
            for (int ref : step.refs)
                if (ref < 1 || ref >= step.index)
                    throw IndexError("step " + std::to_string(step.index) +
                                     " has a non-earlier reference");
            try {
                trace.push_back(check_step(step, trace));
            } catch (const RuleFailure& failure) {
                verdict.accepted = false;
                verdict.failing_step = step.index;
                verdict.reason = failure.reason;
                return verdict;
            }
        }
        verdict.accepted = true;
        verdict.contradiction = probe_contradiction(d_.steps.back().formula);
        return verdict;
    }

private:
    bool operational() const { return semantics_ == Semantics::Operational; }

    const StepAnnotations& annotations_of(int ref, const std::vector<StepAnnotations>& trace) const {
        return trace[static_cast<std::size_t>(ref) - 1];
    }

    const Step& step_at(int index) const { return d_.steps[static_cast<std::size_t>(index) - 1]; }

    StepAnnotations check_step(const Step& step, const std::vector<StepAnnotations>& trace) {
        switch (step.rule) {
            case RuleKind::Premise: return check_premise(step);
            case RuleKind::QM: return check_qm(step, trace);
            case RuleKind::Loc1: return check_loc1(step, trace);
            case RuleKind::Loc2: return check_loc2(step, trace);
            default: return check_logic(step, trace);
        }
    }

    [[noreturn]] static void invalid(const std::string&) { throw RuleFailure{kReasonLogicInvalid}; }

    // -- PREMISE ----------------------------------------------------------

    StepAnnotations check_premise(const Step& step) {
        if (!step.refs.empty()) invalid("premise takes no references");
        const auto items = conjuncts(step.formula);
        if (!atoms_only(items)) invalid("premise must be a conjunction of atoms");

        // Settings first, so outcome atoms can be checked against them.
        for (const auto& item : items) {
            if (item->kind != Formula::Kind::Setting) continue;
            auto [it, inserted] = context_.setting.emplace(side_of(item->setting), item->setting);
            if (!inserted && it->second != item->setting)
                invalid("two different settings on one wing");
        }
        StepAnnotations ann;
        for (const auto& item : items) {
            if (item->kind != Formula::Kind::Outcome) continue;
            OutcomeLabel label = item->outcome;
            SettingLabel s = setting_of(label);
            auto declared = context_.setting.find(side_of(s));
            if (declared == context_.setting.end() || declared->second != s)
                invalid("measured outcome without its setting");
            auto [it, inserted] = context_.outcome.emplace(side_of(s), label);
            if (!inserted && it->second != label) invalid("two measured outcomes on one wing");
            AtomInfo info;
            info.measured = true;
            info.evidence.add(s, outcome_of(label));
            ann.atoms[label] = info;
        }
        return ann;
    }

    // -- QM ----------------------------------------------------------------

    StepAnnotations check_qm(const Step& step, const std::vector<StepAnnotations>& trace) {
        if (step.refs.size() != 1) invalid("QM takes one reference");
        FormulaPtr ref = step_at(step.refs[0]).formula;
        FormulaPtr cur = step.formula;

        // Shared counterfactual context peels off.
        std::vector<SettingLabel> peeled;
        while (ref->kind == Formula::Kind::BoxArrow && cur->kind == Formula::Kind::BoxArrow &&
               ref->setting == cur->setting) {
            peeled.push_back(ref->setting);
            ref = ref->rhs;
            cur = cur->rhs;
        }
        const auto ref_items = conjuncts(ref);
        const auto cur_items = conjuncts(cur);
        if (!atoms_only(ref_items) || !atoms_only(cur_items)) invalid("QM works on conjunctions of atoms");
        if (cur_items.size() != ref_items.size() + 1) invalid("QM adds exactly one outcome atom");
        for (const auto& item : ref_items)
            if (!contains_item(cur_items, item)) invalid("QM must keep the referenced conjunction");

        FormulaPtr added;
        for (const auto& item : cur_items)
            if (!contains_item(ref_items, item)) added = item;
        if (!added || added->kind != Formula::Kind::Outcome)
            invalid("QM adds exactly one outcome atom");

        const OutcomeLabel target = added->outcome;
        const SettingLabel target_setting = setting_of(target);
        bool setting_present =
            std::find(peeled.begin(), peeled.end(), target_setting) != peeled.end() ||
            std::any_of(cur_items.begin(), cur_items.end(),
                        [&](const FormulaPtr& f) { return is_setting_atom(f, target_setting); });
        if (!setting_present) invalid("inferred outcome's setting is not in scope");

        const StepAnnotations& ref_ann = annotations_of(step.refs[0], trace);
        std::pair<SettingLabel, Outcome> to{target_setting, outcome_of(target)};

        // Source candidates in letter order, for deterministic evidence.
        for (OutcomeLabel source : kAllOutcomeLabels) {
            if (side_of(setting_of(source)) == side_of(target_setting)) continue;
            bool present = std::any_of(ref_items.begin(), ref_items.end(), [&](const FormulaPtr& f) {
                return f->kind == Formula::Kind::Outcome && f->outcome == source;
            });
            if (!present) continue;
            std::pair<SettingLabel, Outcome> from{setting_of(source), outcome_of(source)};
            bool certified = false;
            try {
                certified = certify_qm_implication(d_.theta, from, to);
            } catch (const UndefinedConditionalError&) {
                certified = false;
            }
            if (!certified) continue;

            StepAnnotations ann = ref_ann;
            AtomInfo info;
            info.measured = false;
            auto src_info = ref_ann.atoms.find(source);
            if (src_info != ref_ann.atoms.end()) info.evidence = src_info->second.evidence;
            if (!info.evidence.add(from.first, from.second)) invalid("conflicting evidence");
            ann.atoms[target] = info;
            return ann;
        }
        throw RuleFailure{kReasonQmNotCertified};
    }

    // -- LOC1 ---------------------------------------------------------------

    StepAnnotations check_loc1(const Step& step, const std::vector<StepAnnotations>& trace) {
        if (step.refs.size() != 1) invalid("LOC1 takes one reference");
        if (step.formula->kind != Formula::Kind::BoxArrow) invalid("LOC1 concludes a counterfactual");
        const SettingLabel replacement = step.formula->setting;
        const SettingLabel replaced = other_setting_on_side(replacement);

        const auto ref_items = conjuncts(step_at(step.refs[0]).formula);
        if (!atoms_only(ref_items)) invalid("LOC1 applies to a conjunction of atoms");
        bool has_replaced = std::any_of(ref_items.begin(), ref_items.end(), [&](const FormulaPtr& f) {
            return is_setting_atom(f, replaced);
        });
        if (!has_replaced) invalid("replaced setting is not measured in the reference");
        bool has_replacement_already =
            std::any_of(ref_items.begin(), ref_items.end(),
                        [&](const FormulaPtr& f) { return is_setting_atom(f, replacement); });
        if (has_replacement_already) invalid("both settings of one wing in the reference");

        // What survives the replacement: everything except the replaced
        // setting and its outcomes.
        std::vector<FormulaPtr> base;
        for (const auto& item : ref_items) {
            if (is_setting_atom(item, replaced)) continue;
            if (item->kind == Formula::Kind::Outcome && setting_of(item->outcome) == replaced)
                continue;
            base.push_back(item);
        }
        auto with_replacement = base;
        with_replacement.push_back(make_setting(replacement));

        const auto scope_items = conjuncts(step.formula->rhs);
        if (!atoms_only(scope_items)) invalid("LOC1 scope must be a conjunction of atoms");
        if (!same_conj_set(scope_items, with_replacement) && !same_conj_set(scope_items, base))
            invalid("LOC1 scope must be the reference with the setting replaced");

        const StepAnnotations& ref_ann = annotations_of(step.refs[0], trace);
        StepAnnotations ann;
        bool preserved_opposite_outcome = false;
        for (const auto& item : scope_items) {
            if (item->kind != Formula::Kind::Outcome) continue;
            OutcomeLabel label = item->outcome;
            if (side_of(setting_of(label)) != side_of(replacement)) preserved_opposite_outcome = true;
            auto it = ref_ann.atoms.find(label);
            if (it == ref_ann.atoms.end()) invalid("preserved outcome lacks an annotation");
            if (operational() && it->second.evidence.contains_setting(replaced))
                throw RuleFailure{kReasonLoc1Evidence};
            ann.atoms[label] = it->second;
        }
        if (!preserved_opposite_outcome) invalid("LOC1 preserves an outcome of the other wing");
        return ann;
    }

    // -- LOC2 ---------------------------------------------------------------

    StepAnnotations check_loc2(const Step& step, const std::vector<StepAnnotations>& trace) {
        if (step.refs.size() != 1) invalid("LOC2 takes one reference");
        const FormulaPtr& ref = step_at(step.refs[0]).formula;
        const FormulaPtr& cur = step.formula;
        if (ref->kind != Formula::Kind::Implies || cur->kind != Formula::Kind::Implies)
            invalid("LOC2 rewrites an implication");
        if (ref->lhs->kind != Formula::Kind::Setting || cur->lhs->kind != Formula::Kind::Setting)
            invalid("LOC2 antecedents must be bare settings");
        const SettingLabel from_setting = ref->lhs->setting;
        const SettingLabel to_setting = cur->lhs->setting;
        if (side_of(from_setting) != side_of(to_setting) || from_setting == to_setting)
            invalid("LOC2 swaps the two settings of one wing");
        if (!equals_mod_order(ref->rhs, cur->rhs)) invalid("LOC2 must keep the consequent");

        const Side far_side = opposite(side_of(from_setting));
        for (SettingLabel mentioned : mentioned_settings(ref->rhs))
            if (side_of(mentioned) != far_side)
                invalid("LOC2 consequent must mention only the other wing");

        if (operational()) {
            // The whole sub-derivation behind the reference must be free of
            // outcomes of the generalized setting, in formulas and evidence.
            for (int idx : closure_of(step.refs[0]))
                for (OutcomeLabel label : outcome_atoms(step_at(idx).formula))
                    if (setting_of(label) == from_setting)
                        throw RuleFailure{kReasonLoc2LeftOutcome};
            for (const auto& [label, info] : annotations_of(step.refs[0], trace).atoms)
                if (info.evidence.contains_setting(from_setting))
                    throw RuleFailure{kReasonLoc2LeftOutcome};
        }

        StepAnnotations ann = annotations_of(step.refs[0], trace);
        return ann;
    }

    std::vector<int> closure_of(int root) const {
        std::set<int> seen;
        std::vector<int> frontier{root};
        while (!frontier.empty()) {
            int idx = frontier.back();
            frontier.pop_back();
            if (!seen.insert(idx).second) continue;
            for (int ref : step_at(idx).refs) frontier.push_back(ref);
        }
        return {seen.begin(), seen.end()};
    }

    // -- LOGIC ---------------------------------------------------------------

    StepAnnotations check_logic(const Step& step, const std::vector<StepAnnotations>& trace) {
        std::optional<std::string> first_semantic_failure;
        auto attempt = [&](auto&& move) -> std::optional<StepAnnotations> {
            try {
                return move();
            } catch (const RuleFailure& failure) {
                if (failure.reason != kReasonLogicInvalid && !first_semantic_failure)
                    first_semantic_failure = failure.reason;
                return std::nullopt;
            }
        };

        std::optional<StepAnnotations> result;
        if (step.refs.size() == 1) {
            result = attempt([&] { return logic_weakening(step, trace); });
            if (!result) {
                auto r = attempt([&] { return logic_conditionalize(step, trace); });
                if (r) result = r;
            }
        } else if (step.refs.size() >= 2) {
            result = attempt([&] { return logic_conj_intro(step, trace); });
            if (!result && step.refs.size() == 2) {
                auto r = attempt([&] { return logic_imp_trans(step, trace); });
                if (r) result = r;
            }
        }
        if (result) return *result;
        throw RuleFailure{first_semantic_failure.value_or(kReasonLogicInvalid)};
    }

    // newF is refF with conjuncts removed, possibly inside box scopes or an
    // implication consequent. Structural only; evidence checked by caller.
    static bool weaker(const FormulaPtr& ref, const FormulaPtr& cur) {
        if (equals_mod_order(ref, cur)) return true;
        const auto ref_items = conjuncts(ref);
        const auto cur_items = conjuncts(cur);
        if (cur_items.empty() || cur_items.size() > ref_items.size()) return false;
        std::vector<bool> used(ref_items.size(), false);
        for (const auto& item : cur_items) {
            bool matched = false;
            for (std::size_t j = 0; j < ref_items.size() && !matched; ++j) {
                if (used[j]) continue;
                const FormulaPtr& candidate = ref_items[j];
                bool fits = equals_mod_order(candidate, item);
                if (!fits && candidate->kind == Formula::Kind::BoxArrow &&
                    item->kind == Formula::Kind::BoxArrow && candidate->setting == item->setting)
                    fits = weaker(candidate->rhs, item->rhs);
                if (!fits && candidate->kind == Formula::Kind::Implies &&
                    item->kind == Formula::Kind::Implies &&
                    equals_mod_order(candidate->lhs, item->lhs))
                    fits = weaker(candidate->rhs, item->rhs);
                if (fits) used[j] = matched = true;
            }
            if (!matched) return false;
        }
        return true;
    }

    // Shared by weakening and conditionalization: annotations for the kept
    // letters plus the Operational evidence-stripping discipline.
    StepAnnotations weakened_annotations(const FormulaPtr& ref, const FormulaPtr& cur,
                                         const StepAnnotations& ref_ann) {
        const auto ref_letters = outcome_atoms(ref);
        const auto cur_letters = outcome_atoms(cur);
        auto retained = [&](OutcomeLabel l) {
            return std::find(cur_letters.begin(), cur_letters.end(), l) != cur_letters.end();
        };
        if (operational()) {
            for (OutcomeLabel kept : cur_letters) {
                auto it = ref_ann.atoms.find(kept);
                if (it == ref_ann.atoms.end() || it->second.measured) continue;
                for (const auto& [s, o] : it->second.evidence.pairs()) {
                    OutcomeLabel justifying = outcome_label(s, o);
                    bool was_present = std::find(ref_letters.begin(), ref_letters.end(),
                                                 justifying) != ref_letters.end();
                    if (was_present && !retained(justifying))
                        throw RuleFailure{kReasonWeakeningDropsEvidence};
                }
            }
        }
        StepAnnotations ann;
        for (const auto& [label, info] : ref_ann.atoms)
            if (retained(label)) ann.atoms[label] = info;
        return ann;
    }

    StepAnnotations logic_weakening(const Step& step, const std::vector<StepAnnotations>& trace) {
        const FormulaPtr& ref = step_at(step.refs[0]).formula;
        if (!weaker(ref, step.formula)) invalid("not a weakening");
        return weakened_annotations(ref, step.formula, annotations_of(step.refs[0], trace));
    }

    StepAnnotations logic_conj_intro(const Step& step, const std::vector<StepAnnotations>& trace) {
        std::vector<FormulaPtr> pooled;
        for (int ref : step.refs) {
            auto items = conjuncts(step_at(ref).formula);
            for (const auto& item : items)
                if (!contains_item(pooled, item)) pooled.push_back(item);
        }
        auto cur_items = conjuncts(step.formula);
        // Dedupe the step's own conjuncts the same way before comparing.
        std::vector<FormulaPtr> cur_unique;
        for (const auto& item : cur_items)
            if (!contains_item(cur_unique, item)) cur_unique.push_back(item);
        if (!same_conj_set(cur_unique, pooled)) invalid("not the conjunction of the references");

        StepAnnotations ann;
        for (int ref : step.refs) {
            for (const auto& [label, info] : annotations_of(ref, trace).atoms) {
                auto [it, inserted] = ann.atoms.emplace(label, info);
                if (!inserted) {
                    it->second.measured = it->second.measured || info.measured;
                    if (!it->second.evidence.merge(info.evidence)) invalid("conflicting evidence");
                }
            }
        }
        return ann;
    }

    StepAnnotations logic_imp_trans(const Step& step, const std::vector<StepAnnotations>& trace) {
        for (int first : {0, 1}) {
            const FormulaPtr& ab = step_at(step.refs[static_cast<std::size_t>(first)]).formula;
            const FormulaPtr& bc = step_at(step.refs[static_cast<std::size_t>(1 - first)]).formula;
            if (ab->kind != Formula::Kind::Implies || bc->kind != Formula::Kind::Implies) continue;
            if (!equals_mod_order(ab->rhs, bc->lhs)) continue;
            if (!equals_mod_order(step.formula, make_implies(ab->lhs, bc->rhs))) continue;
            StepAnnotations ann;
            const auto letters = outcome_atoms(step.formula);
            for (int ref : step.refs) {
                for (const auto& [label, info] : annotations_of(ref, trace).atoms) {
                    if (std::find(letters.begin(), letters.end(), label) == letters.end()) continue;
                    auto [it, inserted] = ann.atoms.emplace(label, info);
                    if (!inserted) {
                        it->second.measured = it->second.measured || info.measured;
                        if (!it->second.evidence.merge(info.evidence)) invalid("conflicting evidence");
                    }
                }
            }
            return ann;
        }
        invalid("not an implication chain");
    }

    // Remove every conjunct equal to the bare setting atom, including inside
    // box scopes. Null when nothing would remain at some level.
    static FormulaPtr without_setting(const FormulaPtr& f, SettingLabel s, bool& removed) {
        auto items = conjuncts(f);
        std::vector<FormulaPtr> kept;
        for (const auto& item : items) {
            if (is_setting_atom(item, s)) {
                removed = true;
                continue;
            }
            if (item->kind == Formula::Kind::BoxArrow) {
                FormulaPtr scope = without_setting(item->rhs, s, removed);
                if (!scope) return nullptr;
                kept.push_back(make_box(item->setting, scope));
            } else {
                kept.push_back(item);
            }
        }
        if (kept.empty()) return nullptr;
        return make_conjunction(kept);
    }

    StepAnnotations logic_conditionalize(const Step& step,
                                         const std::vector<StepAnnotations>& trace) {
        if (step.formula->kind != Formula::Kind::Implies ||
            step.formula->lhs->kind != Formula::Kind::Setting)
            invalid("not a conditionalization");
        const SettingLabel antecedent = step.formula->lhs->setting;
        const FormulaPtr& ref = step_at(step.refs[0]).formula;
        bool removed = false;
        FormulaPtr stripped = without_setting(ref, antecedent, removed);
        if (!removed || !stripped) invalid("antecedent does not occur in the reference");
        if (!weaker(stripped, step.formula->rhs)) invalid("consequent is not a weakening");
        return weakened_annotations(stripped, step.formula->rhs,
                                    annotations_of(step.refs[0], trace));
    }

    // -- Contradiction probe --------------------------------------------------

    // A counterfactual certainty claim: an outcome atom of the box's own
    // setting inside a box scope of the final (consequent) formula.
    static std::optional<std::pair<SettingLabel, Outcome>> find_box_claim(const FormulaPtr& f) {
        if (f->kind == Formula::Kind::Implies) return find_box_claim(f->rhs);
        if (f->kind == Formula::Kind::And) {
            if (auto left = find_box_claim(f->lhs)) return left;
            return find_box_claim(f->rhs);
        }
        if (f->kind == Formula::Kind::BoxArrow) {
            for (OutcomeLabel label : outcome_atoms(f->rhs))
                if (setting_of(label) == f->setting)
                    return std::make_pair(f->setting, outcome_of(label));
            return find_box_claim(f->rhs);
        }
        return std::nullopt;
    }

    std::optional<Contradiction> probe_contradiction(const FormulaPtr& final_formula) const {
        auto claim = find_box_claim(final_formula);
        if (!claim) return std::nullopt;
        // The chain enters through the sigma_z=+ outcome of the other wing.
        SettingLabel anchor =
            side_of(claim->first) == Side::R ? SettingLabel::L1 : SettingLabel::R1;
        double quantum = 0.0;
        try {
            quantum = conditional_probability(
                hardy_state(d_.theta), measurement(anchor, Outcome::Plus, d_.theta),
                measurement(claim->first, claim->second, d_.theta));
        } catch (const UndefinedConditionalError&) {
            return std::nullopt;
        }
        if (quantum < 1.0 - 1e-9) return Contradiction{1.0, quantum};
        return std::nullopt;
    }

    const Derivation& d_;
    Semantics semantics_;
    PremiseContext context_;
};

}  // namespace

Verdict check_derivation(const Derivation& d, Semantics semantics,
                         std::vector<StepAnnotations>& trace) {
    return Checker(d, semantics).run(trace);
}

Verdict check_derivation(const Derivation& d, Semantics semantics) {
    std::vector<StepAnnotations> trace;
    return check_derivation(d, semantics, trace);
}

}  // namespace qhardy::cfl
