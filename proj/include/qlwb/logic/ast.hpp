// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QLWB_LOGIC_AST_HPP
#define QLWB_LOGIC_AST_HPP

#include <string>
#include <vector>

#include "qlwb/report.hpp"

namespace qlwb::logic {

/// A sort: a named base sort or a binary product.
struct SortExpr {
    std::string name;               // set when factors is empty
    std::vector<SortExpr> factors;  // empty or exactly two

    bool is_product() const { return !factors.empty(); }
    bool operator==(const SortExpr&) const = default;
};

SortExpr named_sort(std::string name);
SortExpr product_sort(SortExpr lhs, SortExpr rhs);
std::string to_string(const SortExpr& s);

struct Term {
    enum class Kind { variable, apply, pair, proj1, proj2 };
    Kind kind = Kind::variable;
    std::string name;        // variable or function symbol
    std::vector<Term> args;

    bool operator==(const Term&) const = default;
};

Term var(std::string name);
Term apply(std::string fn, std::vector<Term> args);

struct Formula {
    enum class Kind { top, bot, pred, conj, disj, ortho, equal, forall, exists };
    Kind kind = Kind::top;
    std::string name;            // predicate symbol, or bound variable
    SortExpr sort;               // quantifier sort
    std::vector<Term> terms;     // predicate arguments, or the two equands
    std::vector<Formula> kids;   // subformulas

    bool operator==(const Formula&) const = default;
};

Formula pred(std::string name, std::vector<Term> terms);
Formula conj(Formula lhs, Formula rhs);
Formula disj(Formula lhs, Formula rhs);
Formula ortho(Formula f);
Formula equal(Term lhs, Term rhs);
Formula forall(std::string v, SortExpr sort, Formula body);
Formula exists(std::string v, SortExpr sort, Formula body);
Formula top();
Formula bot();

struct Sequent {
    Formula lhs;
    Formula rhs;

    bool operator==(const Sequent&) const = default;
};

std::string to_string(const Term& t);
std::string to_string(const Formula& f);
std::string to_string(const Sequent& s);

void collect_free_variables(const Term& t, std::vector<std::string>& out);

/// Free variables in first-occurrence order.
std::vector<std::string> free_variables(const Formula& f);
std::vector<std::string> free_variables(const Sequent& s);

Term substitute(const Term& t, const std::string& name, const Term& replacement);

/// Capture-avoiding substitution; bound variables are renamed when they
/// would capture a free variable of the replacement.
Formula substitute(const Formula& f, const std::string& name, const Term& replacement);

}  // namespace qlwb::logic

#endif
