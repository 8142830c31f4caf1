#pragma once

#include <stdexcept>
#include <string>

#include "apsym/expr.hpp"

namespace apsym {

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    size_t pos;
};

/// Parses the expression grammar:
///   atoms: phi u up upp uppp upppp, decimal integers, rationals p/q,
///          identifiers [a-z][a-z0-9_]*
///   operators: + - * ^ with the usual precedence, unary minus, parentheses
///   functions: sin( ), cos( ) whose argument must normalize to m*phi plus an
///              optional rational offset
/// Whitespace is insignificant. The result is canonical; parse(print(e)) == e.
Expr parse(const std::string& text);

} // namespace apsym
