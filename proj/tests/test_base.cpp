// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>

#include "qlwb/base.hpp"

using namespace qlwb;

namespace {

// {0, 1} with {1} open.
BaseObject sierpinski() {
    return make_fintop({"0", "1"}, {0b00, 0b10, 0b11});
}

// Interval convexity on a linear order of n points: all intervals and {}.
BaseObject interval_convexity(int n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    std::vector<std::uint64_t> sets = {0};
    for (int lo = 0; lo < n; ++lo)
        for (int hi = lo; hi < n; ++hi) {
            std::uint64_t m = 0;
            for (int i = lo; i <= hi; ++i) m |= 1ull << i;
            sets.push_back(m);
        }
    return make_finconv(std::move(labels), std::move(sets));
}

}  // namespace

TEST_CASE("object validation") {
    CHECK(validate_object(sierpinski()).ok());
    CHECK(validate_object(interval_convexity(3)).ok());
    CHECK(validate_object(make_finset({"a", "b"})).ok());

    const BaseObject broken = make_fintop({"0", "1"}, {0b00, 0b10});
    const LawReport rep = validate_object(broken);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.first_failure()->law == "opens-contain-carrier");

    CHECK_THROWS_AS(validate_object(make_finset({"a", "a"})), StructureError);
}

TEST_CASE("finset products") {
    const Product p = product(make_finset({"a", "b"}), make_finset({"c"}));
    REQUIRE(p.object.size() == 2);
    CHECK(p.object.carrier[0] == "(a,c)");
    CHECK(p.object.carrier[1] == "(b,c)");
    CHECK(p.proj1.table == std::vector<int>{0, 1});
    CHECK(p.proj2.table == std::vector<int>{0, 0});
}

TEST_CASE("product of Sierpinski spaces: opens are exactly the unions of boxes") {
    const BaseObject s = sierpinski();
    const Product p = product(s, s);
    REQUIRE(p.object.size() == 4);

    // Oracle: collect every box U x V directly, then all unions of every
    // subset of boxes.
    std::vector<std::uint64_t> boxes;
    for (std::uint64_t u : s.structure)
        for (std::uint64_t v : s.structure) {
            std::uint64_t box = 0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    if ((u & (1u << i)) && (v & (1u << j))) box |= 1ull << (i * 2 + j);
            boxes.push_back(box);
        }
    std::set<std::uint64_t> oracle;
    for (unsigned pick = 0; pick < (1u << boxes.size()); ++pick) {
        std::uint64_t un = 0;
        for (std::size_t b = 0; b < boxes.size(); ++b)
            if (pick & (1u << b)) un |= boxes[b];
        oracle.insert(un);
    }

    CHECK(p.object.structure ==
          std::vector<std::uint64_t>(oracle.begin(), oracle.end()));
    CHECK(oracle.size() == 6);  // the up-sets of the 2x2 product order
    CHECK(validate_object(p.object).ok());
    CHECK(validate_morphism(p.proj1).ok());
    CHECK(validate_morphism(p.proj2).ok());
}

TEST_CASE("products of convexity spaces are boxes") {
    const BaseObject two = interval_convexity(2);
    const BaseObject three = interval_convexity(3);
    const Product p = product(two, three);
    CHECK(p.object.size() == 6);
    // Convex boxes: nonempty intervals 3 * 6 plus the empty set.
    CHECK(p.object.structure.size() == 3 * 6 + 1);
    CHECK(validate_object(p.object).ok());
}

TEST_CASE("diagonal, exponential, composition") {
    const BaseObject x = make_finset({"a", "b"});
    const BaseMorphism d = diagonal(x);
    CHECK(d.table == std::vector<int>{0, 3});
    CHECK(d.cod.carrier[0] == "(a,a)");

    const BaseObject e = exponential(x, make_finset({"0", "1"}));
    CHECK(e.size() == 4);
    CHECK_THROWS_AS(exponential(sierpinski(), sierpinski()), KindError);

    // compose(delta, proj1) is the identity.
    const Product p = product(x, x);
    CHECK(compose(d, p.proj1) == identity(x));
    CHECK(compose(d, p.proj2) == identity(x));
    CHECK(compose(identity(x), d) == d);
}

TEST_CASE("morphism validation and enumeration") {
    CHECK(enumerate_morphisms(make_finset({"a"}), make_finset({"0", "1"})).size() == 2);

    // Continuous self-maps of Sierpinski: both constants and the identity.
    const BaseObject s = sierpinski();
    const auto maps = enumerate_morphisms(s, s);
    CHECK(maps.size() == 3);
    for (const auto& f : maps) CHECK(validate_morphism(f).ok());

    const BaseMorphism swap{s, s, {1, 0}};
    const LawReport rep = validate_morphism(swap);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.first_failure()->law == "preimage-open");
    CHECK(rep.first_failure()->witness["set"] == "{1}");
    CHECK(rep.first_failure()->witness["preimage"] == "{0}");

    // Count for finsets is |Y|^|X|.
    for (int nx = 0; nx <= 3; ++nx)
        for (int ny = 1; ny <= 3; ++ny) {
            long long expect = 1;
            for (int i = 0; i < nx; ++i) expect *= ny;
            CHECK(static_cast<long long>(
                      enumerate_morphisms(canonical_finset(nx), canonical_finset(ny)).size()) ==
                  expect);
        }

    CHECK_THROWS_AS(enumerate_morphisms(canonical_finset(5), canonical_finset(10)),
                    CapacityError);
}

TEST_CASE("product universal property at small sizes") {
    for (int nx = 1; nx <= 3; ++nx)
        for (int ny = 1; ny <= 2; ++ny)
            for (int nw = 1; nw <= 2; ++nw) {
                const BaseObject x = canonical_finset(nx, "x");
                const BaseObject y = canonical_finset(ny, "y");
                const BaseObject w = canonical_finset(nw, "w");
                const Product p = product(x, y);
                for (const auto& f : enumerate_morphisms(w, x))
                    for (const auto& g : enumerate_morphisms(w, y)) {
                        const BaseMorphism paired = pairing(f, g);
                        CHECK(compose(paired, p.proj1) == f);
                        CHECK(compose(paired, p.proj2) == g);
                        // Uniqueness: any mediator with these projections is `paired`.
                        for (const auto& h : enumerate_morphisms(w, p.object))
                            if (compose(h, p.proj1) == f && compose(h, p.proj2) == g)
                                CHECK(h == paired);
                    }
            }
}

TEST_CASE("terminal objects") {
    CHECK(terminal(BaseKind::finset).size() == 1);
    const BaseObject t = terminal(BaseKind::fintop);
    CHECK(t.size() == 1);
    CHECK(t.structure.size() == 2);
    CHECK(validate_object(t).ok());
    CHECK(enumerate_morphisms(sierpinski(), t).size() == 1);
}

TEST_CASE("alexandrov: opens of finite spaces are closed under intersection") {
    for (const BaseObject& x : {sierpinski(), product(sierpinski(), sierpinski()).object}) {
        for (std::uint64_t u : x.structure)
            for (std::uint64_t v : x.structure) CHECK(x.has_set(u & v));
    }
}

TEST_CASE("kind mismatches are rejected") {
    CHECK_THROWS_AS(product(make_finset({"a"}), sierpinski()), KindError);
    const BaseMorphism f{make_finset({"a"}), make_finset({"b"}), {0}};
    const BaseMorphism g{make_finset({"c"}), make_finset({"d"}), {0}};
    CHECK_THROWS_AS(compose(f, g), KindError);
}
