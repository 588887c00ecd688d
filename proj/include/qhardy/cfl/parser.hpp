#pragma once

// Text front end for formulas and derivation files.
//
// Derivation file layout (UTF-8, `#` starts a comment):
//   theta = <decimal radians>
//   step <n>: <formula> by <RULE>[(<ref>,<ref>...)]
// with RULE one of PREMISE, QM, LOC1, LOC2, LOGIC. Step indices run
// consecutively from 1; refs must point at strictly earlier steps.

#include <string>

#include "qhardy/cfl/formula.hpp"

namespace qhardy::cfl {

// Throws ParseError with 1-based line/column on bad input.
FormulaPtr parse_formula(const std::string& text);

// Throws ParseError for malformed text and IndexError for refs that are not
// strictly earlier than their step.
Derivation parse_derivation(const std::string& text);

}  // namespace qhardy::cfl
