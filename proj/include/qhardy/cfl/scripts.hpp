#pragma once

// The two readings of the four-statement locality argument, encoded as
// checkable derivations.
//
// stapp-A ("inferred" reading, 4 steps): the left x outcome c is never
// measured, only inferred from the right outcome g; the counterfactual
// replacement R2 -> R1 then leans on evidence that mentions R2.
//
// stapp-B ("measured" reading, 6 steps): c is measured, the replacement is
// clean, but finishing the argument requires first forgetting c while
// keeping the f inferred from it, then generalizing over the left setting
// that produced c.
//
// Realist checking accepts both and surfaces the clash with the quantum
// conditional; Operational checking rejects each at its documented step.

#include <map>
#include <numbers>
#include <string>

#include "qhardy/cfl/formula.hpp"

namespace qhardy::cfl {

std::map<std::string, Derivation> builtin_scripts(Theta theta = Theta(std::numbers::pi / 3.0));

}  // namespace qhardy::cfl
