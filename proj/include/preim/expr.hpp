#pragma once

#include <string>

#include "preim/bipoly.hpp"
#include "preim/dynamics.hpp"

namespace preim {

/// Rational expression in x and t, kept as a numerator/denominator pair.
struct ParsedExpr {
    BiPoly num, den;
};

/// Recursive-descent parse over {x, t, integers, + - * / ^ ( )}.
/// Throws std::invalid_argument on malformed input.
ParsedExpr parse_expression(const std::string& text);

/// Expression in x alone, as a self-map of P^1.
RatMap parse_map(const std::string& text);

/// Polynomial in t alone (denominator must be constant).
Poly parse_poly_t(const std::string& text);

}  // namespace preim
