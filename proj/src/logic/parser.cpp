// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#include "qlwb/logic/parser.hpp"

#include <cctype>

namespace qlwb::logic {

namespace {

enum class Tok {
    ident, amp, bar, prime, lparen, rparen, dot, colon, comma, eq, star, turnstile, end
};

struct Token {
    Tok kind;
    std::string text;
    int column;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const int col = static_cast<int>(i);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Tok::ident, text.substr(i, j - i), col});
            i = j;
            continue;
        }
        switch (c) {
            case '&': out.push_back({Tok::amp, "&", col}); break;
            case '\'': out.push_back({Tok::prime, "'", col}); break;
            case '(': out.push_back({Tok::lparen, "(", col}); break;
            case ')': out.push_back({Tok::rparen, ")", col}); break;
            case '.': out.push_back({Tok::dot, ".", col}); break;
            case ':': out.push_back({Tok::colon, ":", col}); break;
            case ',': out.push_back({Tok::comma, ",", col}); break;
            case '=': out.push_back({Tok::eq, "=", col}); break;
            case '*': out.push_back({Tok::star, "*", col}); break;
            case '|':
                if (i + 1 < text.size() && text[i + 1] == '-') {
                    out.push_back({Tok::turnstile, "|-", col});
                    ++i;
                } else {
                    out.push_back({Tok::bar, "|", col});
                }
                break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", col);
        }
        ++i;
    }
    out.push_back({Tok::end, "", static_cast<int>(text.size())});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

    Formula formula() {
        Formula f = disjunction();
        return f;
    }

    Sequent sequent() {
        Formula lhs = disjunction();
        expect(Tok::turnstile, "'|-'");
        Formula rhs = disjunction();
        return Sequent{std::move(lhs), std::move(rhs)};
    }

    std::variant<Formula, Sequent> any() {
        Formula lhs = disjunction();
        if (peek().kind == Tok::turnstile) {
            next();
            Formula rhs = disjunction();
            finish();
            return Sequent{std::move(lhs), std::move(rhs)};
        }
        finish();
        return lhs;
    }

    SortExpr sort() {
        SortExpr s = sort_atom();
        while (peek().kind == Tok::star) {
            next();
            s = product_sort(std::move(s), sort_atom());
        }
        return s;
    }

    void finish() {
        if (peek().kind != Tok::end)
            throw ParseError("unexpected '" + peek().text + "'", peek().column);
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }

    Token expect(Tok kind, const std::string& what) {
        if (peek().kind != kind)
            throw ParseError("expected " + what + ", got '" +
                                 (peek().kind == Tok::end ? "end of input" : peek().text) + "'",
                             peek().column);
        return next();
    }

    Formula disjunction() {
        Formula f = conjunction();
        while (peek().kind == Tok::bar) {
            next();
            f = disj(std::move(f), conjunction());
        }
        return f;
    }

    Formula conjunction() {
        Formula f = unary();
        while (peek().kind == Tok::amp) {
            next();
            f = conj(std::move(f), unary());
        }
        return f;
    }

    Formula unary() {
        Formula f = atom();
        while (peek().kind == Tok::prime) {
            next();
            f = ortho(std::move(f));
        }
        return f;
    }

    Formula atom() {
        const Token& t = peek();
        if (t.kind == Tok::lparen) {
            next();
            Formula f = disjunction();
            expect(Tok::rparen, "')'");
            return f;
        }
        if (t.kind == Tok::ident) {
            if (t.text == "top") {
                next();
                return top();
            }
            if (t.text == "bot") {
                next();
                return bot();
            }
            if (t.text == "forall" || t.text == "exists") {
                const bool universal = t.text == "forall";
                next();
                const Token v = expect(Tok::ident, "a variable");
                expect(Tok::colon, "':'");
                SortExpr s = sort();
                expect(Tok::dot, "'.'");
                Formula body = disjunction();
                return universal ? forall(v.text, std::move(s), std::move(body))
                                 : exists(v.text, std::move(s), std::move(body));
            }
            // Predicate application or the left side of an equality.
            Term first = term();
            if (peek().kind == Tok::eq) {
                next();
                Term second = term();
                return equal(std::move(first), std::move(second));
            }
            return term_to_atom(std::move(first), t.column);
        }
        throw ParseError("expected a formula, got '" +
                             (t.kind == Tok::end ? "end of input" : t.text) + "'",
                         t.column);
    }

    Formula term_to_atom(Term&& t, int column) {
        if (t.kind == Term::Kind::variable) return pred(std::move(t.name), {});
        if (t.kind == Term::Kind::apply) return pred(std::move(t.name), std::move(t.args));
        throw ParseError("pair/fst/snd build terms, not formulas", column);
    }

    Term term() {
        const Token head = expect(Tok::ident, "a term");
        if (head.text == "top" || head.text == "bot" || head.text == "forall" ||
            head.text == "exists")
            throw ParseError("'" + head.text + "' is not a term", head.column);
        if (peek().kind != Tok::lparen) return var(head.text);
        next();
        std::vector<Term> args;
        if (peek().kind != Tok::rparen) {
            args.push_back(term());
            while (peek().kind == Tok::comma) {
                next();
                args.push_back(term());
            }
        }
        expect(Tok::rparen, "',' or ')'");
        if (head.text == "pair") {
            if (args.size() != 2)
                throw ParseError("pair takes two arguments", head.column);
            return Term{Term::Kind::pair, "", std::move(args)};
        }
        if (head.text == "fst" || head.text == "snd") {
            if (args.size() != 1)
                throw ParseError(head.text + " takes one argument", head.column);
            return Term{head.text == "fst" ? Term::Kind::proj1 : Term::Kind::proj2, "",
                        std::move(args)};
        }
        return apply(head.text, std::move(args));
    }

    SortExpr sort_atom() {
        if (peek().kind == Tok::lparen) {
            next();
            SortExpr s = sort();
            expect(Tok::rparen, "')'");
            return s;
        }
        return named_sort(expect(Tok::ident, "a sort").text);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(const std::string& text) {
    Parser p(text);
    Formula f = p.formula();
    p.finish();
    return f;
}

Sequent parse_sequent(const std::string& text) {
    Parser p(text);
    Sequent s = p.sequent();
    p.finish();
    return s;
}

SortExpr parse_sort(const std::string& text) {
    Parser p(text);
    SortExpr s = p.sort();
    p.finish();
    return s;
}

std::variant<Formula, Sequent> parse_any(const std::string& text) {
    Parser p(text);
    return p.any();
}

}  // namespace qlwb::logic
