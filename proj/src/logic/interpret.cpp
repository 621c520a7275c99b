// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#include "qlwb/logic/interpret.hpp"

#include <algorithm>

namespace qlwb::logic {

BaseObject resolve_sort(const Signature& sig, const SortExpr& s) {
    if (!s.is_product()) {
        auto it = sig.sorts.find(s.name);
        if (it == sig.sorts.end())
            throw TypeCheckError("unknown sort '" + s.name + "'");
        return it->second;
    }
    const BaseObject lhs = resolve_sort(sig, s.factors[0]);
    const BaseObject rhs = resolve_sort(sig, s.factors[1]);
    return tuple_product(lhs.kind, {lhs, rhs}).object;
}

namespace {

BaseObject args_object(const Model& m, const Signature& sig, const std::vector<SortExpr>& args) {
    std::vector<BaseObject> objs;
    objs.reserve(args.size());
    for (const auto& a : args) objs.push_back(resolve_sort(sig, a));
    return tuple_product(m.base_kind, objs).object;
}

}  // namespace

LawReport validate_signature(const Model& m, const Signature& sig) {
    LawReport rep;
    for (const auto& [name, obj] : sig.sorts) {
        LawReport r = validate_object(obj);
        if (!r.ok() || obj.kind != m.base_kind) {
            json w = json{{"sort", name}};
            if (!r.ok()) w["law"] = r.first_failure()->law;
            rep.failed("signature-sorts", static_cast<std::int64_t>(sig.sorts.size()), w);
            return rep;
        }
    }
    rep.passed("signature-sorts", static_cast<std::int64_t>(sig.sorts.size()));

    for (const auto& [name, fn] : sig.functions) {
        const BaseObject dom = args_object(m, sig, fn.args);
        const BaseObject cod = resolve_sort(sig, fn.result);
        if (!(fn.morphism.dom == dom) || !(fn.morphism.cod == cod) ||
            !validate_morphism(fn.morphism).ok()) {
            rep.failed("signature-functions", static_cast<std::int64_t>(sig.functions.size()),
                       json{{"function", name}});
            return rep;
        }
    }
    rep.passed("signature-functions", static_cast<std::int64_t>(sig.functions.size()));

    for (const auto& [name, ps] : sig.predicates) {
        const BaseObject over = args_object(m, sig, ps.args);
        if (!(ps.predicate.over == over) || !in_fibre(m, ps.predicate)) {
            rep.failed("signature-predicates", static_cast<std::int64_t>(sig.predicates.size()),
                       json{{"predicate", name}});
            return rep;
        }
    }
    rep.passed("signature-predicates", static_cast<std::int64_t>(sig.predicates.size()));
    return rep;
}

ContextObject resolve_context(const Model& m, const Signature& sig, const Context& ctx) {
    std::vector<BaseObject> objs;
    objs.reserve(ctx.size());
    for (const auto& [name, sort] : ctx) objs.push_back(resolve_sort(sig, sort));
    TupleProduct t = tuple_product(m.base_kind, objs);
    return ContextObject{std::move(t.object), std::move(t.projections)};
}

namespace {

int lookup_var(const Context& ctx, const std::string& name) {
    for (int i = static_cast<int>(ctx.size()) - 1; i >= 0; --i)
        if (ctx[i].first == name) return i;
    return -1;
}

}  // namespace

SortExpr typecheck_term(const Signature& sig, const Context& ctx, const Term& t) {
    switch (t.kind) {
        case Term::Kind::variable: {
            const int i = lookup_var(ctx, t.name);
            if (i < 0) throw TypeCheckError("unbound variable '" + t.name + "'");
            return ctx[i].second;
        }
        case Term::Kind::apply: {
            auto it = sig.functions.find(t.name);
            if (it == sig.functions.end())
                throw TypeCheckError("unknown function symbol '" + t.name + "'");
            if (it->second.args.size() != t.args.size())
                throw TypeCheckError("function '" + t.name + "' expects " +
                                     std::to_string(it->second.args.size()) + " arguments, got " +
                                     std::to_string(t.args.size()));
            for (std::size_t i = 0; i < t.args.size(); ++i) {
                const SortExpr got = typecheck_term(sig, ctx, t.args[i]);
                if (!(got == it->second.args[i]))
                    throw TypeCheckError("argument " + std::to_string(i + 1) + " of '" + t.name +
                                         "' has sort " + to_string(got) + ", expected " +
                                         to_string(it->second.args[i]));
            }
            return it->second.result;
        }
        case Term::Kind::pair: {
            SortExpr lhs = typecheck_term(sig, ctx, t.args[0]);
            SortExpr rhs = typecheck_term(sig, ctx, t.args[1]);
            return product_sort(std::move(lhs), std::move(rhs));
        }
        case Term::Kind::proj1:
        case Term::Kind::proj2: {
            const SortExpr s = typecheck_term(sig, ctx, t.args[0]);
            if (!s.is_product())
                throw TypeCheckError("projection applied to non-product sort " + to_string(s));
            return t.kind == Term::Kind::proj1 ? s.factors[0] : s.factors[1];
        }
    }
    throw TypeCheckError("malformed term");
}

void typecheck_formula(const Signature& sig, const Context& ctx, const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::top:
        case Formula::Kind::bot:
            return;
        case Formula::Kind::pred: {
            auto it = sig.predicates.find(f.name);
            if (it == sig.predicates.end())
                throw TypeCheckError("unknown predicate symbol '" + f.name + "'");
            if (it->second.args.size() != f.terms.size())
                throw TypeCheckError("predicate '" + f.name + "' expects " +
                                     std::to_string(it->second.args.size()) + " arguments, got " +
                                     std::to_string(f.terms.size()));
            for (std::size_t i = 0; i < f.terms.size(); ++i) {
                const SortExpr got = typecheck_term(sig, ctx, f.terms[i]);
                if (!(got == it->second.args[i]))
                    throw TypeCheckError("argument " + std::to_string(i + 1) + " of '" + f.name +
                                         "' has sort " + to_string(got) + ", expected " +
                                         to_string(it->second.args[i]));
            }
            return;
        }
        case Formula::Kind::equal: {
            const SortExpr lhs = typecheck_term(sig, ctx, f.terms[0]);
            const SortExpr rhs = typecheck_term(sig, ctx, f.terms[1]);
            if (!(lhs == rhs))
                throw TypeCheckError("equality between sorts " + to_string(lhs) + " and " +
                                     to_string(rhs));
            return;
        }
        case Formula::Kind::ortho:
            typecheck_formula(sig, ctx, f.kids[0]);
            return;
        case Formula::Kind::conj:
        case Formula::Kind::disj:
            typecheck_formula(sig, ctx, f.kids[0]);
            typecheck_formula(sig, ctx, f.kids[1]);
            return;
        case Formula::Kind::forall:
        case Formula::Kind::exists: {
            resolve_sort(sig, f.sort);  // sort must exist
            Context extended = ctx;
            extended.emplace_back(f.name, f.sort);
            typecheck_formula(sig, extended, f.kids[0]);
            return;
        }
    }
}

namespace {

using Bindings = std::vector<std::pair<std::string, SortExpr>>;

void bind(Bindings& found, const std::string& name, const SortExpr& sort, bool& progressed) {
    for (auto& [n, s] : found) {
        if (n != name) continue;
        if (!(s == sort))
            throw TypeCheckError("variable '" + name + "' used at sorts " + to_string(s) +
                                 " and " + to_string(sort));
        return;
    }
    found.emplace_back(name, sort);
    progressed = true;
}

const SortExpr* sort_of(const Bindings& found, const std::string& name) {
    for (const auto& [n, s] : found)
        if (n == name) return &s;
    return nullptr;
}

// Pushes an expected sort down a term; returns the term's sort when it
// can be determined bottom-up.
const SortExpr* constrain_term(const Signature& sig, const std::vector<std::string>& bound,
                               Bindings& found, const Term& t, const SortExpr* expected,
                               bool& progressed, std::vector<SortExpr>& scratch) {
    switch (t.kind) {
        case Term::Kind::variable: {
            if (std::find(bound.begin(), bound.end(), t.name) != bound.end()) return nullptr;
            if (expected) bind(found, t.name, *expected, progressed);
            return sort_of(found, t.name);
        }
        case Term::Kind::apply: {
            auto it = sig.functions.find(t.name);
            if (it == sig.functions.end())
                throw TypeCheckError("unknown function symbol '" + t.name + "'");
            for (std::size_t i = 0; i < t.args.size() && i < it->second.args.size(); ++i)
                constrain_term(sig, bound, found, t.args[i], &it->second.args[i], progressed,
                               scratch);
            return &it->second.result;
        }
        case Term::Kind::pair: {
            const SortExpr* l = nullptr;
            const SortExpr* r = nullptr;
            if (expected && expected->is_product()) {
                l = &expected->factors[0];
                r = &expected->factors[1];
            }
            const SortExpr* lg = constrain_term(sig, bound, found, t.args[0], l, progressed, scratch);
            const SortExpr* rg = constrain_term(sig, bound, found, t.args[1], r, progressed, scratch);
            if (lg && rg) {
                scratch.push_back(product_sort(*lg, *rg));
                return &scratch.back();
            }
            return nullptr;
        }
        case Term::Kind::proj1:
        case Term::Kind::proj2: {
            const SortExpr* inner =
                constrain_term(sig, bound, found, t.args[0], nullptr, progressed, scratch);
            if (inner && inner->is_product())
                return t.kind == Term::Kind::proj1 ? &inner->factors[0] : &inner->factors[1];
            return nullptr;
        }
    }
    return nullptr;
}

void constrain_formula(const Signature& sig, std::vector<std::string>& bound, Bindings& found,
                       const Formula& f, bool& progressed, std::vector<SortExpr>& scratch) {
    switch (f.kind) {
        case Formula::Kind::pred: {
            auto it = sig.predicates.find(f.name);
            if (it == sig.predicates.end())
                throw TypeCheckError("unknown predicate symbol '" + f.name + "'");
            for (std::size_t i = 0; i < f.terms.size() && i < it->second.args.size(); ++i)
                constrain_term(sig, bound, found, f.terms[i], &it->second.args[i], progressed,
                               scratch);
            return;
        }
        case Formula::Kind::equal: {
            const SortExpr* l =
                constrain_term(sig, bound, found, f.terms[0], nullptr, progressed, scratch);
            constrain_term(sig, bound, found, f.terms[1], l, progressed, scratch);
            const SortExpr* r =
                constrain_term(sig, bound, found, f.terms[1], nullptr, progressed, scratch);
            constrain_term(sig, bound, found, f.terms[0], r, progressed, scratch);
            return;
        }
        case Formula::Kind::forall:
        case Formula::Kind::exists:
            bound.push_back(f.name);
            constrain_formula(sig, bound, found, f.kids[0], progressed, scratch);
            bound.pop_back();
            return;
        default:
            for (const auto& k : f.kids)
                constrain_formula(sig, bound, found, k, progressed, scratch);
    }
}

Context build_context(const Signature& sig, const std::vector<std::string>& vars,
                      const Bindings& found) {
    Context ctx;
    for (const auto& v : vars) {
        const SortExpr* s = sort_of(found, v);
        if (!s)
            throw TypeCheckError("cannot infer a sort for variable '" + v + "'");
        ctx.emplace_back(v, *s);
    }
    return ctx;
}

}  // namespace

Context infer_context(const Signature& sig, const Formula& f) {
    Bindings found;
    std::vector<SortExpr> scratch;
    scratch.reserve(64);
    bool progressed = true;
    while (progressed) {
        progressed = false;
        std::vector<std::string> bound;
        constrain_formula(sig, bound, found, f, progressed, scratch);
    }
    Context ctx = build_context(sig, free_variables(f), found);
    typecheck_formula(sig, ctx, f);
    return ctx;
}

Context infer_context(const Signature& sig, const Sequent& s) {
    Bindings found;
    std::vector<SortExpr> scratch;
    scratch.reserve(64);
    bool progressed = true;
    while (progressed) {
        progressed = false;
        std::vector<std::string> bound;
        constrain_formula(sig, bound, found, s.lhs, progressed, scratch);
        constrain_formula(sig, bound, found, s.rhs, progressed, scratch);
    }
    Context ctx = build_context(sig, free_variables(s), found);
    typecheck_formula(sig, ctx, s.lhs);
    typecheck_formula(sig, ctx, s.rhs);
    return ctx;
}

namespace {

BaseMorphism constant_to_terminal(const Model& m, const BaseObject& dom) {
    return BaseMorphism{dom, terminal(m.base_kind), std::vector<int>(dom.size(), 0)};
}

}  // namespace

BaseMorphism interpret_term(const Model& m, const Signature& sig, const Context& ctx,
                            const Term& t) {
    const ContextObject co = resolve_context(m, sig, ctx);
    switch (t.kind) {
        case Term::Kind::variable: {
            const int i = lookup_var(ctx, t.name);
            if (i < 0) throw TypeCheckError("unbound variable '" + t.name + "'");
            return co.projections[i];
        }
        case Term::Kind::apply: {
            const FunctionSymbol& fn = sig.functions.at(t.name);
            if (t.args.empty())
                return compose(constant_to_terminal(m, co.object), fn.morphism);
            std::vector<BaseMorphism> parts;
            parts.reserve(t.args.size());
            for (const auto& a : t.args) parts.push_back(interpret_term(m, sig, ctx, a));
            return compose(tuple_pairing(m.base_kind, parts), fn.morphism);
        }
        case Term::Kind::pair: {
            return pairing(interpret_term(m, sig, ctx, t.args[0]),
                           interpret_term(m, sig, ctx, t.args[1]));
        }
        case Term::Kind::proj1:
        case Term::Kind::proj2: {
            const SortExpr s = typecheck_term(sig, ctx, t.args[0]);
            const BaseObject lhs = resolve_sort(sig, s.factors[0]);
            const BaseObject rhs = resolve_sort(sig, s.factors[1]);
            Product p = product(lhs, rhs);
            return compose(interpret_term(m, sig, ctx, t.args[0]),
                           t.kind == Term::Kind::proj1 ? p.proj1 : p.proj2);
        }
    }
    throw TypeCheckError("malformed term");
}

Predicate interpret_formula(const Model& m, const Signature& sig, const Context& ctx,
                            const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::top:
            return pred_top(m, resolve_context(m, sig, ctx).object);
        case Formula::Kind::bot:
            return pred_bot(m, resolve_context(m, sig, ctx).object);
        case Formula::Kind::pred: {
            const PredicateSymbol& ps = sig.predicates.at(f.name);
            if (f.terms.empty()) {
                const ContextObject co = resolve_context(m, sig, ctx);
                return pullback(m, constant_to_terminal(m, co.object), ps.predicate);
            }
            std::vector<BaseMorphism> parts;
            parts.reserve(f.terms.size());
            for (const auto& t : f.terms) parts.push_back(interpret_term(m, sig, ctx, t));
            return pullback(m, tuple_pairing(m.base_kind, parts), ps.predicate);
        }
        case Formula::Kind::conj:
            return pred_meet(m, interpret_formula(m, sig, ctx, f.kids[0]),
                             interpret_formula(m, sig, ctx, f.kids[1]));
        case Formula::Kind::disj:
            return pred_join(m, interpret_formula(m, sig, ctx, f.kids[0]),
                             interpret_formula(m, sig, ctx, f.kids[1]));
        case Formula::Kind::ortho:
            return pred_ortho(m, interpret_formula(m, sig, ctx, f.kids[0]));
        case Formula::Kind::equal: {
            const SortExpr s = typecheck_term(sig, ctx, f.terms[0]);
            const Predicate eq = equality_along(m, pred_top(m, resolve_sort(sig, s)));
            const BaseMorphism both = pairing(interpret_term(m, sig, ctx, f.terms[0]),
                                              interpret_term(m, sig, ctx, f.terms[1]));
            return pullback(m, both, eq);
        }
        case Formula::Kind::forall:
        case Formula::Kind::exists: {
            Context extended = ctx;
            extended.emplace_back(f.name, f.sort);
            const Predicate body = interpret_formula(m, sig, extended, f.kids[0]);
            const BaseObject outer = resolve_context(m, sig, ctx).object;
            const int sort_size = resolve_sort(sig, f.sort).size();
            // Drop the final (least significant) coordinate.
            BaseMorphism drop{body.over, outer, std::vector<int>(body.over.size())};
            for (int i = 0; i < body.over.size(); ++i)
                drop.table[i] = sort_size > 0 ? i / sort_size : 0;
            return f.kind == Formula::Kind::forall ? forall_along(m, drop, body)
                                                   : exists_along(m, drop, body);
        }
    }
    throw TypeCheckError("malformed formula");
}

SequentResult check_sequent(const Model& m, const Signature& sig, const Sequent& s) {
    SequentResult res;
    res.context = infer_context(sig, s);
    const Predicate lhs = interpret_formula(m, sig, res.context, s.lhs);
    const Predicate rhs = interpret_formula(m, sig, res.context, s.rhs);
    res.valid = true;
    for (int i = 0; i < lhs.over.size(); ++i) {
        if (!m.omega.le(lhs.table[i], rhs.table[i])) {
            res.valid = false;
            res.witness = json{{"point", lhs.over.carrier[i]},
                               {"lhs", m.omega.carrier[lhs.table[i]]},
                               {"rhs", m.omega.carrier[rhs.table[i]]}};
            break;
        }
    }
    return res;
}

}  // namespace qlwb::logic
