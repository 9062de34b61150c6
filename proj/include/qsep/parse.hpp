#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qsep/laurent.hpp"

namespace qsep {

// Infix expressions over integers and symbols: + - * / ^ and parentheses.
// Exponents must be integer literals (optionally negative). "ell" is read as l.
RatFunc parse_ratfunc(std::string_view text);
LaurentPoly parse_laurent(std::string_view text, std::vector<std::string> vars);

}  // namespace qsep
