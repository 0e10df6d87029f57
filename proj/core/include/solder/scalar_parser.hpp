#pragma once

#include <string>

#include "solder/scalar.hpp"

namespace solder {

// Parses an expression over the chart's variables into a Scalar.
//
// Grammar (precedence low to high):
//   expr    := term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := '-' factor | power
//   power   := primary ('^' ('-')? integer)?
//   primary := rational | variable | 'exp' '(' expr ')' | '(' expr ')'
//   rational := integer ('/' integer)?
//
// Negative exponents are accepted only directly on Laurent-flagged bare
// variables; exp arguments must normalize to polynomials.
Scalar parse_scalar(const ChartPtr& chart, const std::string& text);

}  // namespace solder
