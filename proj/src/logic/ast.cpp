// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#include "qlwb/logic/ast.hpp"

#include <algorithm>

namespace qlwb::logic {

SortExpr named_sort(std::string name) { return SortExpr{std::move(name), {}}; }

SortExpr product_sort(SortExpr lhs, SortExpr rhs) {
    SortExpr s;
    s.factors.push_back(std::move(lhs));
    s.factors.push_back(std::move(rhs));
    return s;
}

std::string to_string(const SortExpr& s) {
    if (!s.is_product()) return s.name;
    auto wrap = [](const SortExpr& f) {
        return f.is_product() ? "(" + to_string(f) + ")" : to_string(f);
    };
    return wrap(s.factors[0]) + "*" + wrap(s.factors[1]);
}

Term var(std::string name) { return Term{Term::Kind::variable, std::move(name), {}}; }

Term apply(std::string fn, std::vector<Term> args) {
    return Term{Term::Kind::apply, std::move(fn), std::move(args)};
}

Formula pred(std::string name, std::vector<Term> terms) {
    Formula f;
    f.kind = Formula::Kind::pred;
    f.name = std::move(name);
    f.terms = std::move(terms);
    return f;
}

namespace {

Formula binary(Formula::Kind kind, Formula lhs, Formula rhs) {
    Formula f;
    f.kind = kind;
    f.kids.push_back(std::move(lhs));
    f.kids.push_back(std::move(rhs));
    return f;
}

Formula quantifier(Formula::Kind kind, std::string v, SortExpr sort, Formula body) {
    Formula f;
    f.kind = kind;
    f.name = std::move(v);
    f.sort = std::move(sort);
    f.kids.push_back(std::move(body));
    return f;
}

}  // namespace

Formula conj(Formula lhs, Formula rhs) { return binary(Formula::Kind::conj, std::move(lhs), std::move(rhs)); }
Formula disj(Formula lhs, Formula rhs) { return binary(Formula::Kind::disj, std::move(lhs), std::move(rhs)); }

Formula ortho(Formula f) {
    Formula out;
    out.kind = Formula::Kind::ortho;
    out.kids.push_back(std::move(f));
    return out;
}

Formula equal(Term lhs, Term rhs) {
    Formula f;
    f.kind = Formula::Kind::equal;
    f.terms.push_back(std::move(lhs));
    f.terms.push_back(std::move(rhs));
    return f;
}

Formula forall(std::string v, SortExpr sort, Formula body) {
    return quantifier(Formula::Kind::forall, std::move(v), std::move(sort), std::move(body));
}

Formula exists(std::string v, SortExpr sort, Formula body) {
    return quantifier(Formula::Kind::exists, std::move(v), std::move(sort), std::move(body));
}

Formula top() { return Formula{}; }

Formula bot() {
    Formula f;
    f.kind = Formula::Kind::bot;
    return f;
}

std::string to_string(const Term& t) {
    switch (t.kind) {
        case Term::Kind::variable:
            return t.name;
        case Term::Kind::pair:
            return "pair(" + to_string(t.args[0]) + "," + to_string(t.args[1]) + ")";
        case Term::Kind::proj1:
            return "fst(" + to_string(t.args[0]) + ")";
        case Term::Kind::proj2:
            return "snd(" + to_string(t.args[0]) + ")";
        case Term::Kind::apply: {
            std::string out = t.name + "(";
            for (std::size_t i = 0; i < t.args.size(); ++i) {
                if (i) out += ",";
                out += to_string(t.args[i]);
            }
            return out + ")";
        }
    }
    return "?";
}

namespace {

// Precedence levels: quantifiers 0, | 1, & 2, atoms and postfix ' 3.
int level(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::forall:
        case Formula::Kind::exists:
            return 0;
        case Formula::Kind::disj:
            return 1;
        case Formula::Kind::conj:
            return 2;
        default:
            return 3;
    }
}

std::string print(const Formula& f, int parent) {
    std::string out;
    switch (f.kind) {
        case Formula::Kind::top: out = "top"; break;
        case Formula::Kind::bot: out = "bot"; break;
        case Formula::Kind::pred: {
            out = f.name;
            if (!f.terms.empty()) {
                out += "(";
                for (std::size_t i = 0; i < f.terms.size(); ++i) {
                    if (i) out += ",";
                    out += to_string(f.terms[i]);
                }
                out += ")";
            }
            break;
        }
        case Formula::Kind::equal:
            out = to_string(f.terms[0]) + " = " + to_string(f.terms[1]);
            break;
        case Formula::Kind::ortho:
            out = print(f.kids[0], 3) + "'";
            break;
        case Formula::Kind::conj:
            // right operand at a higher threshold so nesting reparses
            // exactly (the parser folds left)
            out = print(f.kids[0], 2) + " & " + print(f.kids[1], 3);
            break;
        case Formula::Kind::disj:
            out = print(f.kids[0], 1) + " | " + print(f.kids[1], 2);
            break;
        case Formula::Kind::forall:
        case Formula::Kind::exists:
            out = (f.kind == Formula::Kind::forall ? "forall " : "exists ") + f.name + ":" +
                  to_string(f.sort) + ". " + print(f.kids[0], 0);
            break;
    }
    // Equality is an atom grammatically but prints with spaces; wrap it
    // whenever it sits under a connective for readability.
    int own = level(f);
    if (f.kind == Formula::Kind::equal && parent > 0) own = 0;
    return own < parent ? "(" + out + ")" : out;
}

}  // namespace

std::string to_string(const Formula& f) { return print(f, 0); }

std::string to_string(const Sequent& s) {
    return to_string(s.lhs) + " |- " + to_string(s.rhs);
}

void collect_free_variables(const Term& t, std::vector<std::string>& out) {
    if (t.kind == Term::Kind::variable) {
        if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
        return;
    }
    for (const auto& a : t.args) collect_free_variables(a, out);
}

namespace {

void collect(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
    switch (f.kind) {
        case Formula::Kind::pred:
        case Formula::Kind::equal: {
            std::vector<std::string> vars;
            for (const auto& t : f.terms) collect_free_variables(t, vars);
            for (auto& v : vars)
                if (std::find(bound.begin(), bound.end(), v) == bound.end() &&
                    std::find(out.begin(), out.end(), v) == out.end())
                    out.push_back(v);
            break;
        }
        case Formula::Kind::forall:
        case Formula::Kind::exists:
            bound.push_back(f.name);
            collect(f.kids[0], bound, out);
            bound.pop_back();
            break;
        default:
            for (const auto& k : f.kids) collect(k, bound, out);
    }
}

}  // namespace

std::vector<std::string> free_variables(const Formula& f) {
    std::vector<std::string> bound, out;
    collect(f, bound, out);
    return out;
}

std::vector<std::string> free_variables(const Sequent& s) {
    std::vector<std::string> bound, out;
    collect(s.lhs, bound, out);
    collect(s.rhs, bound, out);
    return out;
}

Term substitute(const Term& t, const std::string& name, const Term& replacement) {
    if (t.kind == Term::Kind::variable) return t.name == name ? replacement : t;
    Term out = t;
    for (auto& a : out.args) a = substitute(a, name, replacement);
    return out;
}

Formula substitute(const Formula& f, const std::string& name, const Term& replacement) {
    Formula out = f;
    switch (f.kind) {
        case Formula::Kind::pred:
        case Formula::Kind::equal:
            for (auto& t : out.terms) t = substitute(t, name, replacement);
            return out;
        case Formula::Kind::forall:
        case Formula::Kind::exists: {
            if (f.name == name) return out;  // shadowed
            std::vector<std::string> incoming;
            collect_free_variables(replacement, incoming);
            if (std::find(incoming.begin(), incoming.end(), f.name) != incoming.end()) {
                // Rename the bound variable away from the replacement.
                std::string fresh = f.name;
                std::vector<std::string> taken = incoming;
                for (auto& v : free_variables(f.kids[0])) taken.push_back(v);
                do {
                    fresh += "_";
                } while (std::find(taken.begin(), taken.end(), fresh) != taken.end());
                out.name = fresh;
                out.kids[0] = substitute(f.kids[0], f.name, var(fresh));
            }
            out.kids[0] = substitute(out.kids[0], name, replacement);
            return out;
        }
        default:
            for (auto& k : out.kids) k = substitute(k, name, replacement);
            return out;
    }
}

}  // namespace qlwb::logic
