#include "qhardy/cfl/formula.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace qhardy::cfl {

FormulaPtr make_setting(SettingLabel s) {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Setting;
    f->setting = s;
    return f;
}

FormulaPtr make_outcome(OutcomeLabel o) {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Outcome;
    f->outcome = o;
    return f;
}

FormulaPtr make_and(FormulaPtr lhs, FormulaPtr rhs) {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::And;
    f->lhs = std::move(lhs);
    f->rhs = std::move(rhs);
    return f;
}

FormulaPtr make_implies(FormulaPtr lhs, FormulaPtr rhs) {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Implies;
    f->lhs = std::move(lhs);
    f->rhs = std::move(rhs);
    return f;
}

FormulaPtr make_box(SettingLabel replacement, FormulaPtr scope) {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::BoxArrow;
    f->setting = replacement;
    f->rhs = std::move(scope);
    return f;
}

FormulaPtr make_conjunction(const std::vector<FormulaPtr>& parts) {
    if (parts.empty()) throw std::invalid_argument("conjunction needs at least one part");
    FormulaPtr acc = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) acc = make_and(acc, parts[i]);
    return acc;
}

bool is_atom(const Formula& f) {
    return f.kind == Formula::Kind::Setting || f.kind == Formula::Kind::Outcome;
}

bool equals(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case Formula::Kind::Setting: return a->setting == b->setting;
        case Formula::Kind::Outcome: return a->outcome == b->outcome;
        case Formula::Kind::And:
        case Formula::Kind::Implies: return equals(a->lhs, b->lhs) && equals(a->rhs, b->rhs);
        case Formula::Kind::BoxArrow:
            return a->setting == b->setting && equals(a->rhs, b->rhs);
    }
    return false;
}

bool equals_mod_order(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind == Formula::Kind::And || b->kind == Formula::Kind::And) {
        auto items_a = conjuncts(a);
        auto items_b = conjuncts(b);
        if (items_a.size() != items_b.size()) return false;
        std::vector<bool> used(items_b.size(), false);
        for (const auto& ia : items_a) {
            bool matched = false;
            for (std::size_t j = 0; j < items_b.size() && !matched; ++j) {
                if (!used[j] && equals_mod_order(ia, items_b[j])) {
                    used[j] = true;
                    matched = true;
                }
            }
            if (!matched) return false;
        }
        return true;
    }
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Formula::Kind::Setting: return a->setting == b->setting;
        case Formula::Kind::Outcome: return a->outcome == b->outcome;
        case Formula::Kind::Implies:
            return equals_mod_order(a->lhs, b->lhs) && equals_mod_order(a->rhs, b->rhs);
        case Formula::Kind::BoxArrow:
            return a->setting == b->setting && equals_mod_order(a->rhs, b->rhs);
        default: return false;
    }
}

std::vector<FormulaPtr> conjuncts(const FormulaPtr& f) {
    std::vector<FormulaPtr> out;
    if (!f) return out;
    if (f->kind == Formula::Kind::And) {
        auto left = conjuncts(f->lhs);
        auto right = conjuncts(f->rhs);
        out.insert(out.end(), left.begin(), left.end());
        out.insert(out.end(), right.begin(), right.end());
    } else {
        out.push_back(f);
    }
    return out;
}

namespace {

template <typename Visit>
void walk(const FormulaPtr& f, const Visit& visit) {
    if (!f) return;
    visit(*f);
    walk(f->lhs, visit);
    walk(f->rhs, visit);
}

}  // namespace

std::vector<OutcomeLabel> outcome_atoms(const FormulaPtr& f) {
    std::vector<OutcomeLabel> out;
    walk(f, [&](const Formula& node) {
        if (node.kind == Formula::Kind::Outcome &&
            std::find(out.begin(), out.end(), node.outcome) == out.end())
            out.push_back(node.outcome);
    });
    return out;
}

std::vector<SettingLabel> mentioned_settings(const FormulaPtr& f) {
    std::vector<SettingLabel> out;
    auto add = [&](SettingLabel s) {
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    };
    walk(f, [&](const Formula& node) {
        if (node.kind == Formula::Kind::Setting || node.kind == Formula::Kind::BoxArrow)
            add(node.setting);
        if (node.kind == Formula::Kind::Outcome) add(setting_of(node.outcome));
    });
    return out;
}

namespace {

// Printing honors the grammar's precedence: a left-folded And chain prints
// flat, anything else gets parentheses exactly where reparsing needs them.
void print_node(const Formula& f, std::string& out);

void print_conj_child(const FormulaPtr& child, bool is_rhs, std::string& out) {
    bool needs_parens = child->kind == Formula::Kind::Implies ||
                        (is_rhs && child->kind == Formula::Kind::And);
    if (needs_parens) out += '(';
    print_node(*child, out);
    if (needs_parens) out += ')';
}

void print_box_scope(const FormulaPtr& scope, std::string& out) {
    bool bare = is_atom(*scope) || scope->kind == Formula::Kind::BoxArrow;
    if (!bare) out += '(';
    print_node(*scope, out);
    if (!bare) out += ')';
}

void print_node(const Formula& f, std::string& out) {
    switch (f.kind) {
        case Formula::Kind::Setting:
            out += to_string(f.setting);
            break;
        case Formula::Kind::Outcome:
            out += to_string(f.outcome);
            break;
        case Formula::Kind::And:
            print_conj_child(f.lhs, false, out);
            out += " & ";
            print_conj_child(f.rhs, true, out);
            break;
        case Formula::Kind::Implies:
            if (f.lhs->kind == Formula::Kind::Implies) {
                out += '(';
                print_node(*f.lhs, out);
                out += ')';
            } else {
                print_node(*f.lhs, out);
            }
            out += " => ";
            print_node(*f.rhs, out);
            break;
        case Formula::Kind::BoxArrow:
            out += to_string(f.setting);
            out += " []-> ";
            print_box_scope(f.rhs, out);
            break;
    }
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
    std::string out;
    print_node(*f, out);
    return out;
}

const char* to_string(RuleKind r) {
    switch (r) {
        case RuleKind::Premise: return "PREMISE";
        case RuleKind::QM: return "QM";
        case RuleKind::Loc1: return "LOC1";
        case RuleKind::Loc2: return "LOC2";
        default: return "LOGIC";
    }
}

std::string print_derivation(const Derivation& d) {
    char theta_buf[40];
    std::snprintf(theta_buf, sizeof(theta_buf), "%.17g", d.theta.value());
    std::string out = "theta = ";
    out += theta_buf;
    out += '\n';
    for (const Step& step : d.steps) {
        out += "step " + std::to_string(step.index) + ": " + print_formula(step.formula) + " by " +
               to_string(step.rule);
        if (!step.refs.empty()) {
            out += '(';
            for (std::size_t i = 0; i < step.refs.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(step.refs[i]);
            }
            out += ')';
        }
        out += '\n';
    }
    return out;
}

}  // namespace qhardy::cfl
