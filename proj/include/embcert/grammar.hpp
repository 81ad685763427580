#pragma once

#include <string>
#include <vector>

#include "embcert/bipoly.hpp"
#include "embcert/multipoly.hpp"
#include "embcert/unipoly.hpp"

namespace embcert {

// Text grammar shared by every document format:
//   integers, rationals a/b, the imaginary unit i, variables, + - * ^,
//   parentheses; whitespace is insignificant and multiplication may be
//   implicit (3t, 2(t+1)). Exponents are nonnegative integer literals,
//   which is what rejects transcendental entries such as e^t.

/// Parse against an explicit variable list; unknown identifiers are errors.
MultiPoly parse_multipoly(const std::string& text, const std::vector<std::string>& vars);

/// Parse a polynomial in a single named variable.
UniPoly parse_unipoly(const std::string& text, const std::string& var);

/// Parse a polynomial in the ordered pair (sv, tv).
BiPoly parse_bipoly(const std::string& text, const std::string& sv, const std::string& tv);

std::string coefficient_str(const G& c);

} // namespace embcert
