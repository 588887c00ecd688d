#pragma once

// Formula language of the counterfactual locality calculus.
//
//   formula := impl
//   impl    := conj ["=>" impl]
//   conj    := unit {"&" unit}
//   unit    := SETTING | OUTCOME | SETTING "[]->" unit | "(" formula ")"
//
// SETTING atoms assert that a measurement is performed; OUTCOME atoms assert
// its result. `S []-> F` reads: had the same-wing setting been replaced by S,
// F would hold.

#include <memory>
#include <string>
#include <vector>

#include "qhardy/hardy.hpp"

namespace qhardy::cfl {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { Setting, Outcome, And, Implies, BoxArrow };

    Kind kind;
    SettingLabel setting{};  // Setting and BoxArrow nodes
    OutcomeLabel outcome{};  // Outcome nodes
    FormulaPtr lhs;          // And / Implies
    FormulaPtr rhs;          // And / Implies; BoxArrow scope
};

FormulaPtr make_setting(SettingLabel s);
FormulaPtr make_outcome(OutcomeLabel o);
FormulaPtr make_and(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr make_implies(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr make_box(SettingLabel replacement, FormulaPtr scope);

// Left-folded conjunction of the given parts; requires at least one part.
FormulaPtr make_conjunction(const std::vector<FormulaPtr>& parts);

bool is_atom(const Formula& f);

// Structural equality.
bool equals(const FormulaPtr& a, const FormulaPtr& b);

// Equality up to reordering of conjuncts (applied recursively).
bool equals_mod_order(const FormulaPtr& a, const FormulaPtr& b);

// Flatten nested And nodes into the list of conjuncts (single element for a
// non-And formula).
std::vector<FormulaPtr> conjuncts(const FormulaPtr& f);

// All outcome letters occurring anywhere in the formula, in traversal order
// without duplicates.
std::vector<OutcomeLabel> outcome_atoms(const FormulaPtr& f);

// All setting labels mentioned anywhere: setting atoms, box replacements and
// the settings of outcome atoms.
std::vector<SettingLabel> mentioned_settings(const FormulaPtr& f);

// Minimal-parentheses rendering; parse(print(f)) reproduces f exactly.
std::string print_formula(const FormulaPtr& f);

// One checked inference step and a whole derivation.
enum class RuleKind { Premise, QM, Loc1, Loc2, Logic };

const char* to_string(RuleKind r);

struct Step {
    int index;  // consecutive from 1
    FormulaPtr formula;
    RuleKind rule;
    std::vector<int> refs;  // strictly earlier step indices
};

struct Derivation {
    Theta theta;
    std::vector<Step> steps;
};

std::string print_derivation(const Derivation& d);

}  // namespace qhardy::cfl
