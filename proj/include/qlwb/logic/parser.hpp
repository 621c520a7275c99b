// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QLWB_LOGIC_PARSER_HPP
#define QLWB_LOGIC_PARSER_HPP

#include <variant>

#include "qlwb/logic/ast.hpp"

namespace qlwb::logic {

/// Syntax error with a 0-based column into the input text.
struct ParseError : Error {
    int column;
    ParseError(const std::string& msg, int col)
        : Error("syntax error at column " + std::to_string(col) + ": " + msg), column(col) {}
};

// Grammar (ASCII): postfix ' binds tightest, then &, then |; quantifier
// scope extends as far right as possible. pair/fst/snd are term
// constructors; sorts are names or products S*T.
Formula parse_formula(const std::string& text);
Sequent parse_sequent(const std::string& text);
SortExpr parse_sort(const std::string& text);

/// A sequent when the text contains |-, otherwise a formula.
std::variant<Formula, Sequent> parse_any(const std::string& text);

}  // namespace qlwb::logic

#endif
