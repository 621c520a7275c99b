// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QLWB_LOGIC_INTERPRET_HPP
#define QLWB_LOGIC_INTERPRET_HPP

#include <map>

#include "qlwb/hyperdoctrine.hpp"
#include "qlwb/logic/ast.hpp"

namespace qlwb::logic {

struct TypeCheckError : Error {
    using Error::Error;
};

struct FunctionSymbol {
    std::vector<SortExpr> args;
    SortExpr result;
    BaseMorphism morphism;  // from the tuple product of the arg sorts
};

struct PredicateSymbol {
    std::vector<SortExpr> args;
    Predicate predicate;  // over the tuple product of the arg sorts
};

struct Signature {
    std::map<std::string, BaseObject> sorts;
    std::map<std::string, FunctionSymbol> functions;
    std::map<std::string, PredicateSymbol> predicates;
};

BaseObject resolve_sort(const Signature& sig, const SortExpr& s);

/// Checks every symbol's interpretation against its declared arity and
/// sorts (tables sized and valued correctly, morphisms valid).
LawReport validate_signature(const Model& m, const Signature& sig);

/// A typed variable context in declaration order.
using Context = std::vector<std::pair<std::string, SortExpr>>;

/// The context's tuple-product object and per-variable projections.
struct ContextObject {
    BaseObject object;
    std::vector<BaseMorphism> projections;
};

ContextObject resolve_context(const Model& m, const Signature& sig, const Context& ctx);

SortExpr typecheck_term(const Signature& sig, const Context& ctx, const Term& t);
void typecheck_formula(const Signature& sig, const Context& ctx, const Formula& f);

/// Infers sorts for the free variables (first-occurrence order) from the
/// signature's arities; unconstrained or conflicting variables are errors.
Context infer_context(const Signature& sig, const Formula& f);
Context infer_context(const Signature& sig, const Sequent& s);

BaseMorphism interpret_term(const Model& m, const Signature& sig, const Context& ctx,
                            const Term& t);

Predicate interpret_formula(const Model& m, const Signature& sig, const Context& ctx,
                            const Formula& f);

struct SequentResult {
    bool valid = false;
    Context context;
    json witness;  // point + both values when invalid
};

/// Valid iff the interpretation of the left side is below the right side
/// pointwise over the inferred context.
SequentResult check_sequent(const Model& m, const Signature& sig, const Sequent& s);

}  // namespace qlwb::logic

#endif
