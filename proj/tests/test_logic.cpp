// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "qlwb/logic/rules.hpp"

using namespace qlwb;
using namespace qlwb::logic;

namespace {

Model finset_model(FiniteAlgebra omega) {
    Model m;
    m.base_kind = BaseKind::finset;
    m.omega = std::move(omega);
    return m;
}

// One sort S = {s1, s2} with unary P, Q, R and a unary function f.
Signature small_signature(const Model& m, std::vector<int> p_table = {},
                          std::vector<int> q_table = {}) {
    Signature sig;
    const BaseObject s = canonical_finset(2, "s");
    sig.sorts["S"] = s;
    const SortExpr se = named_sort("S");
    auto mk = [&](std::vector<int> table) {
        return PredicateSymbol{{se}, Predicate{s, std::move(table)}};
    };
    sig.predicates["P"] = mk(p_table.empty() ? std::vector<int>{0, 0} : std::move(p_table));
    sig.predicates["Q"] = mk(q_table.empty() ? std::vector<int>{0, 0} : std::move(q_table));
    sig.predicates["R"] = mk({0, 0});
    sig.functions["f"] = FunctionSymbol{{se}, se, BaseMorphism{s, s, {1, 0}}};
    return sig;
}

}  // namespace

TEST_CASE("parsing shapes") {
    const Sequent s = parse_sequent("P(x) & Q(x) |- exists y:S. R(x,y)");
    CHECK(s.lhs.kind == Formula::Kind::conj);
    CHECK(s.rhs.kind == Formula::Kind::exists);
    CHECK(s.rhs.name == "y");
    CHECK(s.rhs.kids[0].terms.size() == 2);

    const Formula f = parse_formula("forall x:S. x = x");
    CHECK(f.kind == Formula::Kind::forall);
    CHECK(f.kids[0].kind == Formula::Kind::equal);
    CHECK(free_variables(f).empty());

    // Precedence: ' > & > |, quantifier scope maximal.
    const Formula g = parse_formula("P(x)' & Q(x) | R(x)");
    CHECK(g.kind == Formula::Kind::disj);
    CHECK(g.kids[0].kind == Formula::Kind::conj);
    CHECK(g.kids[0].kids[0].kind == Formula::Kind::ortho);

    const Formula q = parse_formula("P(x) & forall y:S. Q(y) | R(y)");
    CHECK(q.kind == Formula::Kind::conj);
    CHECK(q.kids[1].kind == Formula::Kind::forall);
    CHECK(q.kids[1].kids[0].kind == Formula::Kind::disj);

    CHECK(parse_sort("S*T*U").factors[0].is_product());
    CHECK(std::holds_alternative<Formula>(parse_any("top")));
    CHECK(std::holds_alternative<Sequent>(parse_any("top |- bot")));
}

TEST_CASE("syntax errors carry positions") {
    try {
        parse_sequent("P(x |-");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.column == 4);
        CHECK(std::string(e.what()).find("column 4") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_formula("P(x))"), ParseError);
    CHECK_THROWS_AS(parse_formula("forall x. P(x)"), ParseError);
    CHECK_THROWS_AS(parse_formula("pair(x,y)"), ParseError);  // term, not formula
    CHECK_THROWS_AS(parse_formula(""), ParseError);
    CHECK_THROWS_AS(parse_formula("P(x) @"), ParseError);
}

TEST_CASE("printing round-trips through the parser") {
    std::mt19937 rng(20260810);
    std::uniform_int_distribution<int> pick(0, 99);

    std::function<Term(int)> rnd_term = [&](int depth) -> Term {
        const int r = pick(rng);
        if (depth <= 0 || r < 50) return var(r % 2 ? "x" : "y");
        if (r < 70) return apply("f", {rnd_term(depth - 1)});
        if (r < 80) return Term{Term::Kind::pair, "", {rnd_term(depth - 1), rnd_term(depth - 1)}};
        if (r < 90) return Term{Term::Kind::proj1, "", {rnd_term(depth - 1)}};
        return Term{Term::Kind::proj2, "", {rnd_term(depth - 1)}};
    };
    std::function<Formula(int)> rnd_formula = [&](int depth) -> Formula {
        const int r = pick(rng);
        if (depth <= 0 || r < 25)
            return pred(r % 3 == 0 ? "P" : r % 3 == 1 ? "Q" : "R", {rnd_term(1)});
        if (r < 35) return top();
        if (r < 40) return bot();
        if (r < 50) return equal(rnd_term(1), rnd_term(1));
        if (r < 62) return conj(rnd_formula(depth - 1), rnd_formula(depth - 1));
        if (r < 74) return disj(rnd_formula(depth - 1), rnd_formula(depth - 1));
        if (r < 84) return ortho(rnd_formula(depth - 1));
        if (r < 92) return forall("x", named_sort("S"), rnd_formula(depth - 1));
        return exists("y", named_sort("S"), rnd_formula(depth - 1));
    };

    for (int i = 0; i < 500; ++i) {
        const Formula f = rnd_formula(4);
        CHECK(parse_formula(to_string(f)) == f);
    }
    for (int i = 0; i < 100; ++i) {
        const Sequent s{rnd_formula(3), rnd_formula(3)};
        CHECK(parse_sequent(to_string(s)) == s);
    }
}

TEST_CASE("context inference") {
    const Model m = finset_model(mo2());
    const Signature sig = small_signature(m);

    const Context ctx = infer_context(sig, parse_sequent("P(x) & Q(y) |- R(x)"));
    REQUIRE(ctx.size() == 2);
    CHECK(ctx[0].first == "x");
    CHECK(ctx[1].first == "y");
    CHECK(ctx[0].second == named_sort("S"));

    // Bound variables do not leak into the context.
    CHECK(infer_context(sig, parse_formula("exists x:S. P(x)")).empty());

    // f's result sort propagates through equalities.
    const Context eq_ctx = infer_context(sig, parse_formula("f(x) = y"));
    CHECK(eq_ctx.size() == 2);

    CHECK_THROWS_AS(infer_context(sig, parse_formula("x = y")), TypeCheckError);
    CHECK_THROWS_AS(infer_context(sig, parse_formula("P(x) & S(x)")), TypeCheckError);
    CHECK_THROWS_AS(infer_context(sig, parse_formula("P(f(x, y))")), TypeCheckError);
}

TEST_CASE("interpretation of connectives and quantifiers") {
    const Model two = finset_model(two_chain());
    Signature sig;
    sig.sorts["S"] = make_finset({"a", "b"});
    sig.predicates["P"] =
        PredicateSymbol{{named_sort("S")}, Predicate{sig.sorts["S"], {1, 0}}};

    CHECK(interpret_formula(two, sig, {}, parse_formula("top")).table == std::vector<int>{1});
    CHECK(interpret_formula(two, sig, {}, parse_formula("exists x:S. P(x)")).table ==
          std::vector<int>{1});
    CHECK(interpret_formula(two, sig, {}, parse_formula("forall x:S. P(x)")).table ==
          std::vector<int>{0});

    const Model q = finset_model(mo2());
    Signature qsig;
    qsig.sorts["S"] = make_finset({"a", "b"});
    qsig.predicates["P"] = PredicateSymbol{
        {named_sort("S")},
        Predicate{qsig.sorts["S"], {q.omega.index_of("a"), q.omega.index_of("a'")}}};
    CHECK(interpret_formula(q, qsig, {}, parse_formula("exists x:S. P(x)")).table ==
          std::vector<int>{q.omega.top});
    CHECK(interpret_formula(q, qsig, {}, parse_formula("forall x:S. P(x)")).table ==
          std::vector<int>{q.omega.bot});

    // Equality pulls back the diagonal predicate.
    const Predicate eq = interpret_formula(two, sig, {{"x", named_sort("S")}},
                                           parse_formula("x = x"));
    CHECK(eq.table == std::vector<int>{1, 1});
    const Predicate eq2 =
        interpret_formula(two, sig,
                          {{"x", named_sort("S")}, {"y", named_sort("S")}},
                          parse_formula("x = y"));
    CHECK(eq2.table == std::vector<int>{1, 0, 0, 1});

    // Pair and projections.
    const Predicate pp =
        interpret_formula(two, sig, {{"x", named_sort("S")}, {"y", named_sort("S")}},
                          parse_formula("fst(pair(x,y)) = x"));
    CHECK(pp.table == std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("negation needs an ortho-closed fibre") {
    Model s;
    s.base_kind = BaseKind::fintop;
    s.omega = two_chain();
    s.fibre_rule = FibreRule::open_tables;
    Signature sig;
    sig.sorts["S"] = make_fintop({"0", "1"}, {0b00, 0b10, 0b11});
    sig.predicates["P"] =
        PredicateSymbol{{named_sort("S")}, Predicate{sig.sorts["S"], {0, 1}}};
    CHECK(interpret_formula(s, sig, {{"x", named_sort("S")}}, parse_formula("P(x)")).table ==
          std::vector<int>{0, 1});
    CHECK_THROWS_AS(
        interpret_formula(s, sig, {{"x", named_sort("S")}}, parse_formula("P(x)'")),
        LiftingError);
}

TEST_CASE("substitution lemma and quantifier weakening, sampled") {
    const Model q = finset_model(mo2());
    Signature sig = small_signature(q);
    const BaseObject s = sig.sorts["S"];
    const SortExpr se = named_sort("S");

    std::mt19937 rng(42);
    std::uniform_int_distribution<int> elem(0, q.omega.size() - 1);
    std::uniform_int_distribution<int> point(0, 1);

    const std::vector<std::string> formulas = {
        "P(x) & Q(y)", "P(x) | R(x)'", "P(f(x)) & Q(x)", "exists z:S. R(z) & P(x)",
        "x = y | P(x)"};

    for (int trial = 0; trial < 60; ++trial) {
        // Random reinterpretation of P, Q, R, f.
        for (auto* name : {"P", "Q", "R"}) {
            auto& table = sig.predicates[name].predicate.table;
            for (auto& e : table) e = elem(rng);
        }
        auto& ftab = sig.functions["f"].morphism.table;
        for (auto& e : ftab) e = point(rng);

        const Formula phi = parse_formula(formulas[trial % formulas.size()]);
        const Term t = apply("f", {var("y")});
        const Context outer = {{"y", se}};
        const Context inner = {{"y", se}, {"x", se}};

        // substitution commutes with interpretation
        const Predicate direct = interpret_formula(q, sig, outer, substitute(phi, "x", t));
        const Predicate body = interpret_formula(q, sig, inner, phi);
        BaseMorphism graph{s, body.over, std::vector<int>(s.size())};
        for (int y = 0; y < s.size(); ++y) graph.table[y] = y * s.size() + ftab[y];
        CHECK(direct.table == pullback(q, graph, body).table);

        // forall below every instance, instance below exists
        const Predicate all = interpret_formula(q, sig, outer, forall("x", se, phi));
        const Predicate some = interpret_formula(q, sig, outer, exists("x", se, phi));
        CHECK(pred_leq(q, all, direct));
        CHECK(pred_leq(q, direct, some));
    }
}

TEST_CASE("sequent validity in quantum models") {
    const std::string om_schema = "P(x) & (P(x)' | (P(x) & Q(x))) |- Q(x)";

    // Valid under every MO2 interpretation.
    const Model q = finset_model(mo2());
    for (int p = 0; p < 6; ++p)
        for (int qq = 0; qq < 6; ++qq) {
            Signature sig = small_signature(q, {p, p}, {qq, qq});
            CHECK(check_sequent(q, sig, parse_sequent(om_schema)).valid);
            CHECK(check_sequent(q, sig, parse_sequent("P(x) |- P(x)")).valid);
        }

    // Invalid in the O6 model at P = b, Q = a.
    const Model o = finset_model(o6());
    Signature sig = small_signature(o, {o.omega.index_of("b"), o.omega.index_of("b")},
                                    {o.omega.index_of("a"), o.omega.index_of("a")});
    const SequentResult res = check_sequent(o, sig, parse_sequent(om_schema));
    REQUIRE_FALSE(res.valid);
    CHECK(res.witness["lhs"] == "b");
    CHECK(res.witness["rhs"] == "a");
}

TEST_CASE("rule soundness: baseline passes, contested schemas fail on MO2") {
    const Model q = finset_model(mo2());
    Signature sig;
    sig.sorts["S"] = canonical_finset(2, "s");

    SoundnessOptions opts;
    opts.samples = 300;
    opts.seed = 7;

    for (const auto& rule : baseline_rules().rules) {
        const LawReport rep = check_rule_soundness(q, sig, rule, opts);
        CHECK(rep.ok());
    }

    SoundnessOptions ex;
    ex.exhaustive = true;
    for (const auto& rule : contested_rules().rules) {
        const LawReport rep = check_rule_soundness(q, sig, rule, ex);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.first_failure()->witness.contains("instantiation"));
    }

    // The same contested schemas are fine in a boolean model.
    const Model b = finset_model(boolean_algebra(2));
    for (const auto& rule : contested_rules().rules)
        CHECK(check_rule_soundness(b, sig, rule, ex).ok());
}

TEST_CASE("rule sets load from JSON and reject bad side conditions") {
    const json good = ruleset_to_json(baseline_rules());
    CHECK(ruleset_from_json(good).rules.size() == baseline_rules().rules.size());

    json bad = json::parse(R"J({"name":"x","rules":[{"name":"broken",
        "vars":[{"name":"x","sort":"S"}],
        "metas":[{"name":"phi","args":["x"]}],
        "side_conditions":[{"fresh":"x","notin":"phi"}],
        "premises":[], "conclusion":"phi(x) |- phi(x)"}]})J");
    CHECK_THROWS_AS(ruleset_from_json(bad), StructureError);
}

TEST_CASE("countermodel search") {
    const Sequent dist = parse_sequent(
        "P(x) & (Q(x) | R(x)) |- (P(x) & Q(x)) | (P(x) & R(x))");
    const auto found = find_countermodel(dist, oml_pool());
    REQUIRE(found.has_value());
    CHECK(found->pool_entry == "mo2");

    CHECK_FALSE(find_countermodel(parse_sequent("P(x) |- P(x)"), full_pool()).has_value());

    const Sequent om = parse_sequent("P(x) & (P(x)' | (P(x) & Q(x))) |- Q(x)");
    CHECK_FALSE(find_countermodel(om, oml_pool()).has_value());
    const auto o6_cx = find_countermodel(om, {{"o6", o6(), {1, 2}}});
    REQUIRE(o6_cx.has_value());
    CHECK(o6_cx->pool_entry == "o6");
    CHECK(o6_cx->witness.contains("point"));
}

TEST_CASE("soundness reports are deterministic under a fixed seed") {
    const Model q = finset_model(mo2());
    Signature sig;
    sig.sorts["S"] = canonical_finset(2, "s");
    SoundnessOptions opts;
    opts.samples = 100;
    opts.seed = 99;
    const json a = check_ruleset_soundness(q, sig, baseline_rules(), opts).to_json();
    const json b = check_ruleset_soundness(q, sig, baseline_rules(), opts).to_json();
    CHECK(a.dump() == b.dump());
}
