// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>

#include "qlwb/hyperdoctrine.hpp"
#include "qlwb/subspace.hpp"

using namespace qlwb;

namespace {

Model finset_model(FiniteAlgebra omega) {
    Model m;
    m.base_kind = BaseKind::finset;
    m.omega = std::move(omega);
    m.fibre_rule = FibreRule::all_tables;
    return m;
}

Model sierpinski_model() {
    Model m;
    m.base_kind = BaseKind::fintop;
    m.omega = two_chain();
    m.fibre_rule = FibreRule::open_tables;
    return m;
}

BaseObject sierpinski() { return make_fintop({"0", "1"}, {0b00, 0b10, 0b11}); }

std::uint64_t true_set(const Model& m, const Predicate& v) {
    std::uint64_t s = 0;
    for (int i = 0; i < v.over.size(); ++i)
        if (v.table[i] == m.omega.top) s |= 1ull << i;
    return s;
}

}  // namespace

TEST_CASE("model validation") {
    Model m = finset_model(mo2());
    CHECK(validate_model(m).ok());

    m.fibre_rule = FibreRule::open_tables;
    CHECK_FALSE(validate_model(m).ok());  // wrong kind and omega too large

    Model s = sierpinski_model();
    s.objects["S"] = sierpinski();
    CHECK(validate_model(s).ok());

    s.omega = mo2();
    CHECK_FALSE(validate_model(s).ok());
}

TEST_CASE("fibre enumeration") {
    const Model m = finset_model(mo2());
    CHECK(enumerate_fibre(m, make_finset({"a"})).size() == 6);
    CHECK(enumerate_fibre(m, make_finset({})).size() == 1);

    const Model s = sierpinski_model();
    const auto fibre = enumerate_fibre(s, sierpinski());
    REQUIRE(fibre.size() == 3);  // characteristic maps of the three opens
    std::set<std::uint64_t> seen;
    for (const auto& v : fibre) seen.insert(true_set(s, v));
    CHECK(seen == std::set<std::uint64_t>{0b00, 0b10, 0b11});

    CHECK_THROWS_AS(enumerate_fibre(m, canonical_finset(6)), CapacityError);
}

TEST_CASE("pullback is functorial and a lattice homomorphism") {
    const Model m = finset_model(mo2());
    const BaseObject x = canonical_finset(2, "x");
    const BaseObject y = canonical_finset(3, "y");
    const BaseObject z = canonical_finset(2, "z");

    for (const auto& v : enumerate_fibre(m, y))
        CHECK(pullback(m, identity(y), v) == v);

    // Constant morphisms pull back to constant predicates.
    const BaseMorphism c{x, y, {1, 1}};
    for (const auto& v : enumerate_fibre(m, y)) {
        const Predicate p = pullback(m, c, v);
        CHECK(p.table == std::vector<int>{v.table[1], v.table[1]});
    }

    for (const auto& f : enumerate_morphisms(x, y))
        for (const auto& g : enumerate_morphisms(y, z))
            for (const auto& v : enumerate_fibre(m, z))
                CHECK(pullback(m, compose(f, g), v) == pullback(m, f, pullback(m, g, v)));

    for (const auto& f : enumerate_morphisms(x, y)) {
        CHECK(pullback(m, f, pred_top(m, y)) == pred_top(m, x));
        CHECK(pullback(m, f, pred_bot(m, y)) == pred_bot(m, x));
        for (const auto& u : enumerate_fibre(m, y)) {
            CHECK(pullback(m, f, pred_ortho(m, u)) == pred_ortho(m, pullback(m, f, u)));
            for (const auto& v : enumerate_fibre(m, y)) {
                CHECK(pullback(m, f, pred_meet(m, u, v)) ==
                      pred_meet(m, pullback(m, f, u), pullback(m, f, v)));
                CHECK(pullback(m, f, pred_join(m, u, v)) ==
                      pred_join(m, pullback(m, f, u), pullback(m, f, v)));
            }
        }
    }
}

TEST_CASE("pointwise quantifiers") {
    const Model two = finset_model(two_chain());
    const BaseObject x = make_finset({"x1", "x2"});
    const BaseObject y = make_finset({"y"});
    const Product p = product(x, y);

    const Predicate v{p.object, {1, 0}};
    CHECK(forall_along(two, p.proj2, v).table == std::vector<int>{0});
    CHECK(exists_along(two, p.proj2, v).table == std::vector<int>{1});

    // Empty domain: empty meet is top, empty join is bottom.
    const Product pe = product(make_finset({}), y);
    const Predicate empty{pe.object, {}};
    CHECK(forall_along(two, pe.proj2, empty).table == std::vector<int>{1});
    CHECK(exists_along(two, pe.proj2, empty).table == std::vector<int>{0});

    const Model q = finset_model(mo2());
    const Predicate vq{p.object, {q.omega.index_of("a"), q.omega.index_of("b")}};
    CHECK(forall_along(q, p.proj2, vq).table == std::vector<int>{q.omega.bot});
    const Predicate vq2{p.object, {q.omega.index_of("a"), q.omega.index_of("a'")}};
    CHECK(exists_along(q, p.proj2, vq2).table == std::vector<int>{q.omega.top});
}

TEST_CASE("boolean quantifiers are image and coimage") {
    const Model two = finset_model(two_chain());
    const BaseObject x = canonical_finset(2, "x");
    const BaseObject y = canonical_finset(2, "y");
    const Product p = product(x, y);
    for (const auto& v : enumerate_fibre(two, p.object)) {
        std::uint64_t image = 0, coimage = 0;
        for (int j = 0; j < y.size(); ++j) {
            bool any = false, all = true;
            for (int i = 0; i < x.size(); ++i) {
                const bool held = v.table[i * y.size() + j] == 1;
                any = any || held;
                all = all && held;
            }
            if (any) image |= 1ull << j;
            if (all) coimage |= 1ull << j;
        }
        CHECK(true_set(two, exists_along(two, p.proj2, v)) == image);
        CHECK(true_set(two, forall_along(two, p.proj2, v)) == coimage);
    }
}

TEST_CASE("open predicates quantify to open predicates") {
    const Model s = sierpinski_model();
    const Product p = product(sierpinski(), sierpinski());
    for (const auto& v : enumerate_fibre(s, p.object)) {
        const Predicate e = exists_along(s, p.proj2, v);  // would throw on lifting failure
        std::uint64_t sections = 0;
        for (int j = 0; j < 2; ++j)
            for (int i = 0; i < 2; ++i)
                if (v.table[i * 2 + j] == 1) sections |= 1ull << j;
        CHECK(true_set(s, e) == sections);
        forall_along(s, p.proj2, v);  // finite spaces: intersections stay open
    }
}

TEST_CASE("equality along the diagonal") {
    const Model two = finset_model(two_chain());
    const BaseObject x = make_finset({"a", "b"});

    const Predicate eq = equality_along(two, pred_top(two, x));
    CHECK(eq.table == std::vector<int>{1, 0, 0, 1});

    // Singleton: equality is the pullback of v along the iso X ~ X x X.
    const BaseObject s1 = make_finset({"s"});
    for (const auto& v : enumerate_fibre(two, s1))
        CHECK(equality_along(two, v).table == v.table);

    const Model q = finset_model(mo2());
    const Predicate v{x, {q.omega.index_of("a"), q.omega.index_of("b'")}};
    CHECK(equality_along(q, v).table ==
          std::vector<int>{q.omega.index_of("a"), 0, 0, q.omega.index_of("b'")});
}

TEST_CASE("equality fails to lift when the diagonal is not open") {
    const Model s = sierpinski_model();
    CHECK_THROWS_AS(equality_along(s, pred_top(s, sierpinski())), LiftingError);
}

TEST_CASE("comprehension carves out the top locus") {
    const Model q = finset_model(mo2());
    const BaseObject x = make_finset({"a", "b"});

    CHECK(comprehension(q, pred_top(q, x)).object == x);
    CHECK(comprehension(q, pred_bot(q, x)).object.size() == 0);

    const Predicate v{x, {q.omega.top, q.omega.index_of("b")}};
    const Comprehension c = comprehension(q, v);
    CHECK(c.object.carrier == std::vector<std::string>{"a"});
    CHECK(c.inclusion.table == std::vector<int>{0});

    // Subspace structure: comprehension in the Sierpinski model.
    const Model s = sierpinski_model();
    const BaseObject sp = sierpinski();
    const Predicate open_point{sp, {0, 1}};
    const Comprehension cs = comprehension(s, open_point);
    CHECK(cs.object.carrier == std::vector<std::string>{"1"});
    CHECK(validate_object(cs.object).ok());
    CHECK(validate_morphism(cs.inclusion).ok());
}

TEST_CASE("adjunctions hold exhaustively") {
    const BaseObject x1 = canonical_finset(1, "x");
    const BaseObject x2 = canonical_finset(2, "x");
    const BaseObject y1 = canonical_finset(1, "y");

    const Model q = finset_model(mo2());
    const LawReport small = check_adjunction(q, Adjoint::exists, x1, y1);
    CHECK(small.ok());
    CHECK(small.checks.front().instances == 36);

    const Model two = finset_model(two_chain());
    CHECK(check_adjunction(two, Adjoint::forall, x2, y1).ok());
    CHECK(check_adjunction(two, Adjoint::exists, x2, y1).ok());
    CHECK(check_adjunction(q, Adjoint::forall, x2, y1).ok());
    CHECK(check_adjunction(q, Adjoint::equality, x2, y1).ok());

    const Model s = sierpinski_model();
    const BaseObject sp = sierpinski();
    CHECK(check_adjunction(s, Adjoint::exists, sp, sp).ok());
    CHECK(check_adjunction(s, Adjoint::forall, sp, sp).ok());
}

TEST_CASE("beck-chevalley squares commute") {
    const BaseObject x = canonical_finset(2, "x");
    const BaseObject y1 = canonical_finset(1, "y");
    const BaseObject y2 = canonical_finset(2, "y");
    const BaseObject z = canonical_finset(2, "z");

    const Model q = finset_model(mo2());
    CHECK(check_beck_chevalley(q, Adjoint::forall, x, y1, z).ok());
    CHECK(check_beck_chevalley(q, Adjoint::exists, x, y1, z).ok());

    const Model b1 = finset_model(boolean_algebra(1));
    CHECK(check_beck_chevalley(b1, Adjoint::forall, x, y2, z).ok());
    CHECK(check_beck_chevalley(b1, Adjoint::exists, x, y2, z).ok());

    const Model s = sierpinski_model();
    const BaseObject sp = sierpinski();
    CHECK(check_beck_chevalley(s, Adjoint::exists, sp, sp, sp).ok());
    CHECK(check_beck_chevalley(s, Adjoint::forall, sp, sp, sp).ok());

    CHECK_THROWS_AS(check_beck_chevalley(q, Adjoint::equality, x, y1, z), KindError);
}

TEST_CASE("frobenius reciprocity separates boolean from quantum fibres") {
    const BaseObject x = canonical_finset(2, "x");
    const BaseObject y = canonical_finset(1, "y");

    for (int k = 0; k <= 2; ++k)
        CHECK_FALSE(check_frobenius(finset_model(boolean_algebra(k)), x, y).has_value());

    const Model q = finset_model(mo2());
    const auto cx = check_frobenius(q, x, y);
    REQUIRE(cx.has_value());
    const auto& [v, w] = *cx;
    CHECK(v.table == std::vector<int>{q.omega.index_of("a"), q.omega.index_of("a'")});
    CHECK(w.table == std::vector<int>{q.omega.index_of("b")});

    // LHS collapses to bottom while RHS keeps w.
    const Product p = product(x, y);
    const Predicate lhs = exists_along(q, p.proj2, pred_meet(q, v, pullback(q, p.proj2, w)));
    const Predicate rhs = pred_meet(q, exists_along(q, p.proj2, v), w);
    CHECK(lhs.table == std::vector<int>{q.omega.bot});
    CHECK(rhs.table == w.table);

    // The rational-subspace MO2 behaves the same way.
    SubspaceLatticeSpec spec;
    spec.dim = 2;
    spec.generators = {{{Rational(1), Rational(0)}}, {{Rational(1), Rational(1)}}};
    spec.size_cap = 50;
    CHECK(check_frobenius(finset_model(subspace_lattice(spec)), x, y).has_value());
}

TEST_CASE("grothendieck homs") {
    const Model q = finset_model(mo2());
    const BaseObject x = make_finset({"a", "b"});

    CHECK(grothendieck_hom(q, pred_top(q, x), pred_top(q, x)).size() == 4);  // all endos

    const Predicate u{x, {q.omega.index_of("a"), q.omega.bot}};
    const auto homs = grothendieck_hom(q, u, pred_bot(q, x));
    for (const auto& f : homs) CHECK_FALSE(f == identity(x));

    // Both hom-sets of the comprehension bijection have size one.
    const BaseObject y = make_finset({"y"});
    const Predicate v{x, {q.omega.top, q.omega.index_of("b")}};
    CHECK(grothendieck_hom(q, pred_top(q, y), v).size() == 1);
    CHECK(enumerate_morphisms(y, comprehension(q, v).object).size() == 1);
    CHECK(check_comprehension_adjunction(q, y, v).ok());
}

TEST_CASE("comprehension adjunction across fibres") {
    const Model q = finset_model(mo2());
    const BaseObject x = canonical_finset(2, "x");
    const BaseObject y = canonical_finset(2, "y");
    for (const auto& v : enumerate_fibre(q, x))
        CHECK(check_comprehension_adjunction(q, y, v).ok());
}

TEST_CASE("generic object") {
    const Model q = finset_model(mo2());
    const LawReport r1 = check_generic_object(q, make_finset({"a"}));
    CHECK(r1.ok());
    CHECK(r1.checks.front().instances == 6);

    const Model two = finset_model(two_chain());
    const LawReport r2 = check_generic_object(two, make_finset({"a", "b"}));
    CHECK(r2.ok());
    CHECK(r2.checks.front().instances == 4);  // the powerset of X

    CHECK_THROWS_AS(check_generic_object(sierpinski_model(), sierpinski()), KindError);
}
