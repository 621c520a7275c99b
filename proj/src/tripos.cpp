// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#include "qlwb/tripos.hpp"

#include <algorithm>
#include <map>

namespace qlwb {

namespace {

// Hot-path law checks on raw row-major tables, no object plumbing.

bool per_laws_hold(const FiniteAlgebra& om, int n, const std::vector<int>& eq) {
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (!om.le(eq[x * n + y], eq[y * n + x])) return false;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (!om.le(om.meet_of(eq[x * n + y], eq[y * n + z]), eq[x * n + z]))
                    return false;
    return true;
}

bool relation_laws_hold(const FiniteAlgebra& om, int nx, const std::vector<int>& eqx, int ny,
                        const std::vector<int>& eqy, const std::vector<int>& rel) {
    // strictness
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            if (!om.le(rel[x * ny + y], om.meet_of(eqx[x * nx + x], eqy[y * ny + y])))
                return false;
    // totality
    for (int x = 0; x < nx; ++x) {
        int sup = om.bot;
        for (int y = 0; y < ny; ++y) sup = om.join_of(sup, rel[x * ny + y]);
        if (!om.le(eqx[x * nx + x], sup)) return false;
    }
    // single-valuedness
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            for (int y2 = 0; y2 < ny; ++y2)
                if (!om.le(om.meet_of(rel[x * ny + y], rel[x * ny + y2]), eqy[y * ny + y2]))
                    return false;
    // congruence
    for (int x = 0; x < nx; ++x)
        for (int x2 = 0; x2 < nx; ++x2)
            for (int y = 0; y < ny; ++y)
                for (int y2 = 0; y2 < ny; ++y2) {
                    const int lhs = om.meet_of(om.meet_of(eqx[x * nx + x2], rel[x * ny + y]),
                                               eqy[y * ny + y2]);
                    if (!om.le(lhs, rel[x2 * ny + y2])) return false;
                }
    return true;
}

std::vector<int> compose_tables(const FiniteAlgebra& om, int nx, int ny, int nz,
                                const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> out(nx * nz, om.bot);
    for (int x = 0; x < nx; ++x)
        for (int z = 0; z < nz; ++z) {
            int acc = om.bot;
            for (int y = 0; y < ny; ++y)
                acc = om.join_of(acc, om.meet_of(f[x * ny + y], g[y * nz + z]));
            out[x * nz + z] = acc;
        }
    return out;
}

}  // namespace

Per make_per(const Model& m, const BaseObject& x, std::vector<int> eq_table) {
    Product p = product(x, x);
    Per per{x, Predicate{std::move(p.object), std::move(eq_table)}};
    if (static_cast<int>(per.eq.table.size()) != per.eq.over.size())
        throw StructureError("per table has size " + std::to_string(per.eq.table.size()) +
                             ", expected " + std::to_string(per.eq.over.size()));
    if (!in_fibre(m, per.eq)) throw StructureError("per table is not in the fibre");
    return per;
}

Per identity_per(const Model& m, const BaseObject& x) {
    return Per{x, equality_along(m, pred_top(m, x))};
}

LawReport check_per(const Model& m, const Per& p) {
    LawReport rep;
    const int n = p.over.size();
    const auto& eq = p.eq.table;

    bool ok = true;
    std::int64_t count = 0;
    for (int x = 0; x < n && ok; ++x)
        for (int y = 0; y < n && ok; ++y) {
            ++count;
            if (!m.omega.le(eq[x * n + y], eq[y * n + x])) {
                rep.failed("per-symmetric", count,
                           json{{"x", p.over.carrier[x]}, {"y", p.over.carrier[y]}});
                ok = false;
            }
        }
    if (ok) rep.passed("per-symmetric", count);

    ok = true;
    count = 0;
    for (int x = 0; x < n && ok; ++x)
        for (int y = 0; y < n && ok; ++y)
            for (int z = 0; z < n && ok; ++z) {
                ++count;
                if (!m.omega.le(m.omega.meet_of(eq[x * n + y], eq[y * n + z]), eq[x * n + z])) {
                    rep.failed("per-transitive", count,
                               json{{"x", p.over.carrier[x]},
                                    {"y", p.over.carrier[y]},
                                    {"z", p.over.carrier[z]}});
                    ok = false;
                }
            }
    if (ok) rep.passed("per-transitive", count);
    return rep;
}

LawReport check_functional_relation(const Model& m, const FunctionalRelation& f) {
    LawReport rep;
    const int nx = f.dom.over.size(), ny = f.cod.over.size();
    const auto& eqx = f.dom.eq.table;
    const auto& eqy = f.cod.eq.table;
    const auto& rel = f.rel.table;
    const auto& om = m.omega;

    bool ok = true;
    for (int x = 0; x < nx && ok; ++x)
        for (int y = 0; y < ny && ok; ++y)
            if (!om.le(rel[x * ny + y], om.meet_of(eqx[x * nx + x], eqy[y * ny + y]))) {
                rep.failed("rel-strict", static_cast<std::int64_t>(nx) * ny,
                           json{{"x", f.dom.over.carrier[x]}, {"y", f.cod.over.carrier[y]}});
                ok = false;
            }
    if (ok) rep.passed("rel-strict", static_cast<std::int64_t>(nx) * ny);

    ok = true;
    for (int x = 0; x < nx && ok; ++x)
        for (int x2 = 0; x2 < nx && ok; ++x2)
            for (int y = 0; y < ny && ok; ++y)
                for (int y2 = 0; y2 < ny && ok; ++y2) {
                    const int lhs = om.meet_of(om.meet_of(eqx[x * nx + x2], rel[x * ny + y]),
                                               eqy[y * ny + y2]);
                    if (!om.le(lhs, rel[x2 * ny + y2])) {
                        rep.failed("rel-congruent", static_cast<std::int64_t>(nx) * nx * ny * ny,
                                   json{{"x", f.dom.over.carrier[x]},
                                        {"x'", f.dom.over.carrier[x2]},
                                        {"y", f.cod.over.carrier[y]},
                                        {"y'", f.cod.over.carrier[y2]}});
                        ok = false;
                    }
                }
    if (ok) rep.passed("rel-congruent", static_cast<std::int64_t>(nx) * nx * ny * ny);

    ok = true;
    for (int x = 0; x < nx && ok; ++x)
        for (int y = 0; y < ny && ok; ++y)
            for (int y2 = 0; y2 < ny && ok; ++y2)
                if (!om.le(om.meet_of(rel[x * ny + y], rel[x * ny + y2]), eqy[y * ny + y2])) {
                    rep.failed("rel-single-valued", static_cast<std::int64_t>(nx) * ny * ny,
                               json{{"x", f.dom.over.carrier[x]},
                                    {"y", f.cod.over.carrier[y]},
                                    {"y'", f.cod.over.carrier[y2]}});
                    ok = false;
                }
    if (ok) rep.passed("rel-single-valued", static_cast<std::int64_t>(nx) * ny * ny);

    ok = true;
    for (int x = 0; x < nx && ok; ++x) {
        int sup = om.bot;
        for (int y = 0; y < ny; ++y) sup = om.join_of(sup, rel[x * ny + y]);
        if (!om.le(eqx[x * nx + x], sup)) {
            rep.failed("rel-total", nx, json{{"x", f.dom.over.carrier[x]}});
            ok = false;
        }
    }
    if (ok) rep.passed("rel-total", nx);
    return rep;
}

FunctionalRelation identity_relation(const Model&, const Per& p) {
    return FunctionalRelation{p, p, p.eq};
}

FunctionalRelation compose_relations(const Model& m, const FunctionalRelation& f,
                                     const FunctionalRelation& g) {
    if (!(f.cod == g.dom)) throw KindError("compose_relations: middle PER mismatch");
    const int nx = f.dom.over.size(), ny = f.cod.over.size(), nz = g.cod.over.size();
    Product p = product(f.dom.over, g.cod.over);
    Predicate rel{std::move(p.object),
                  compose_tables(m.omega, nx, ny, nz, f.rel.table, g.rel.table)};
    return FunctionalRelation{f.dom, g.cod, std::move(rel)};
}

bool relations_equivalent(const Model& m, const FunctionalRelation& f,
                          const FunctionalRelation& g) {
    if (!(f.dom == g.dom) || !(f.cod == g.cod)) return false;
    return pred_leq(m, f.rel, g.rel) && pred_leq(m, g.rel, f.rel);
}

std::vector<Per> enumerate_pers(const Model& m, const BaseObject& x) {
    const int n = x.size();
    Product p = product(x, x);
    std::vector<Per> out;
    for_each_fibre(m, p.object, [&](const Predicate& eq) {
        if (per_laws_hold(m.omega, n, eq.table)) out.push_back(Per{x, eq});
    });
    return out;
}

std::vector<std::vector<int>> enumerate_functional_relations(const Model& m, const Per& a,
                                                             const Per& b) {
    const int nx = a.over.size(), ny = b.over.size();
    Product p = product(a.over, b.over);
    std::vector<std::vector<int>> out;
    for_each_fibre(m, p.object, [&](const Predicate& rel) {
        if (relation_laws_hold(m.omega, nx, a.eq.table, ny, b.eq.table, rel.table))
            out.push_back(rel.table);
    });
    return out;
}

long long ToposCategory::total_homs() const {
    long long n = 0;
    for (const auto& row : homs)
        for (const auto& h : row) n += static_cast<long long>(h.size());
    return n;
}

ToposCategory build_topos(const Model& m, int max_carrier, long long object_cap) {
    ToposCategory cat;
    for (int n = 0; n <= max_carrier; ++n) {
        const BaseObject x = canonical_finset(n, "e");
        for (auto& per : enumerate_pers(m, x)) {
            if (static_cast<long long>(cat.objects.size()) >= object_cap)
                throw CapacityError("topos build exceeds object cap " + std::to_string(object_cap));
            cat.objects.push_back(std::move(per));
        }
    }
    const std::size_t k = cat.objects.size();
    cat.homs.assign(k, {});
    for (std::size_t a = 0; a < k; ++a) {
        cat.homs[a].resize(k);
        for (std::size_t b = 0; b < k; ++b)
            cat.homs[a][b] = enumerate_functional_relations(m, cat.objects[a], cat.objects[b]);
    }
    return cat;
}

namespace {

// Every rel table between carriers of sizes (n1, n2), keyed by an
// omega-ary code; composition matrices live on these ids so composites
// that leave the hom sets still have a home.
struct TableDict {
    int cells = 0;
    std::vector<int> id_of_code;           // code -> id, -1 if unseen
    std::vector<std::vector<int>> tables;  // id -> table

    TableDict() = default;
    TableDict(const FiniteAlgebra& om, int cells_) : cells(cells_) {
        long long size = 1;
        for (int i = 0; i < cells; ++i) size *= om.size();
        id_of_code.assign(static_cast<std::size_t>(size), -1);
    }

    static long long code(const FiniteAlgebra& om, const std::vector<int>& table) {
        long long c = 0;
        for (int e : table) c = c * om.size() + e;
        return c;
    }

    int intern(const FiniteAlgebra& om, const std::vector<int>& table) {
        const long long c = code(om, table);
        if (id_of_code[c] < 0) {
            id_of_code[c] = static_cast<int>(tables.size());
            tables.push_back(table);
        }
        return id_of_code[c];
    }
};

}  // namespace

LawReport check_category_laws(const Model& m, const ToposCategory& cat) {
    LawReport rep;
    const FiniteAlgebra& om = m.omega;
    const std::size_t k = cat.objects.size();

    std::vector<int> sizes(k);
    int max_carrier = 0;
    for (std::size_t a = 0; a < k; ++a) {
        sizes[a] = cat.objects[a].over.size();
        max_carrier = std::max(max_carrier, sizes[a]);
    }

    std::int64_t count = 0;
    for (const auto& per : cat.objects) {
        ++count;
        if (!check_per(m, per).ok()) {
            rep.failed("objects-are-pers", count, json{{"object", count - 1}});
            return rep;
        }
    }
    rep.passed("objects-are-pers", count);

    count = 0;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            for (const auto& h : cat.homs[a][b]) {
                ++count;
                if (!relation_laws_hold(om, sizes[a], cat.objects[a].eq.table, sizes[b],
                                        cat.objects[b].eq.table, h)) {
                    rep.failed("homs-are-functional-relations", count,
                               json{{"from", a}, {"to", b}, {"rel", h}});
                    return rep;
                }
            }
    rep.passed("homs-are-functional-relations", count);

    // Size-pair table dictionaries, seeded with the hom tables; hom ids
    // and hom membership per object pair live on dictionary ids.
    const int ns = max_carrier + 1;
    std::vector<TableDict> dict(ns * ns);
    for (int n1 = 0; n1 < ns; ++n1)
        for (int n2 = 0; n2 < ns; ++n2) dict[n1 * ns + n2] = TableDict(om, n1 * n2);

    std::vector<std::vector<std::vector<int>>> hom_id(k, std::vector<std::vector<int>>(k));
    std::vector<std::vector<std::vector<char>>> is_hom(k, std::vector<std::vector<char>>(k));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            for (const auto& t : cat.homs[a][b])
                hom_id[a][b].push_back(dict[sizes[a] * ns + sizes[b]].intern(om, t));

    count = 0;
    for (std::size_t a = 0; a < k; ++a) {
        ++count;
        bool present = false;
        const int id = dict[sizes[a] * ns + sizes[a]].intern(om, cat.objects[a].eq.table);
        for (int h : hom_id[a][a]) present = present || h == id;
        if (!present) {
            rep.failed("identity-present", count, json{{"object", a}});
            return rep;
        }
    }
    rep.passed("identity-present", count);

    count = 0;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            for (const auto& h : cat.homs[a][b]) {
                ++count;
                const auto left =
                    compose_tables(om, sizes[a], sizes[a], sizes[b], cat.objects[a].eq.table, h);
                const auto right =
                    compose_tables(om, sizes[a], sizes[b], sizes[b], h, cat.objects[b].eq.table);
                if (left != h || right != h) {
                    rep.failed("identity-unital", count, json{{"from", a}, {"to", b}, {"rel", h}});
                    return rep;
                }
            }
    rep.passed("identity-unital", count);

    // Close the dictionaries under composition so every composite of
    // dictionary tables has an id, then read all three laws off the
    // composition matrices.
    std::vector<std::vector<std::vector<int>>> comp(ns * ns * ns);
    bool grew = true;
    while (grew) {
        grew = false;
        for (int n1 = 0; n1 < ns; ++n1)
            for (int n2 = 0; n2 < ns; ++n2)
                for (int n3 = 0; n3 < ns; ++n3) {
                    auto& d1 = dict[n1 * ns + n2];
                    auto& d2 = dict[n2 * ns + n3];
                    auto& d3 = dict[n1 * ns + n3];
                    auto& c = comp[(n1 * ns + n2) * ns + n3];
                    const std::size_t rows = d1.tables.size();
                    const std::size_t cols = d2.tables.size();
                    c.resize(rows);
                    for (std::size_t f = 0; f < rows; ++f) {
                        const std::size_t have = c[f].size();
                        c[f].resize(cols, -1);
                        for (std::size_t g = have; g < cols; ++g) {
                            // intern may grow d1/d2/d3; newly added tables are
                            // picked up on the next fixpoint pass
                            const auto t =
                                compose_tables(om, n1, n2, n3, d1.tables[f], d2.tables[g]);
                            const std::size_t before = d3.tables.size();
                            c[f][g] = d3.intern(om, t);
                            grew = grew || d3.tables.size() > before;
                        }
                    }
                }
    }

    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            auto& flags = is_hom[a][b];
            flags.assign(dict[sizes[a] * ns + sizes[b]].tables.size(), 0);
            for (int h : hom_id[a][b]) flags[h] = 1;
        }

    count = 0;
    std::int64_t closure_violations = 0;
    json closure_witness;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            if (hom_id[a][b].empty()) continue;
            for (std::size_t c = 0; c < k; ++c) {
                if (hom_id[b][c].empty()) continue;
                const auto& cab = comp[(sizes[a] * ns + sizes[b]) * ns + sizes[c]];
                for (int f : hom_id[a][b])
                    for (int g : hom_id[b][c]) {
                        ++count;
                        const int fg = cab[f][g];
                        if (!is_hom[a][c][fg]) {
                            if (closure_violations++ == 0)
                                closure_witness =
                                    json{{"from", a},
                                         {"via", b},
                                         {"to", c},
                                         {"f", dict[sizes[a] * ns + sizes[b]].tables[f]},
                                         {"g", dict[sizes[b] * ns + sizes[c]].tables[g]},
                                         {"composite", dict[sizes[a] * ns + sizes[c]].tables[fg]}};
                        }
                    }
            }
        }
    if (closure_violations == 0)
        rep.passed("composition-closed", count);
    else {
        closure_witness["violations"] = closure_violations;
        rep.failed("composition-closed", count, closure_witness);
    }

    std::int64_t triples = 0, defined = 0;
    std::int64_t assoc_violations = 0, defined_violations = 0;
    json assoc_witness, defined_witness;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            if (hom_id[a][b].empty()) continue;
            for (std::size_t c = 0; c < k; ++c) {
                if (hom_id[b][c].empty()) continue;
                const auto& cab_c = comp[(sizes[a] * ns + sizes[b]) * ns + sizes[c]];
                for (std::size_t d = 0; d < k; ++d) {
                    if (hom_id[c][d].empty()) continue;
                    const auto& cac_d = comp[(sizes[a] * ns + sizes[c]) * ns + sizes[d]];
                    const auto& cbc_d = comp[(sizes[b] * ns + sizes[c]) * ns + sizes[d]];
                    const auto& cab_d = comp[(sizes[a] * ns + sizes[b]) * ns + sizes[d]];
                    for (int f : hom_id[a][b])
                        for (int g : hom_id[b][c]) {
                            const int fg = cab_c[f][g];
                            for (int h : hom_id[c][d]) {
                                ++triples;
                                const int gh = cbc_d[g][h];
                                const int lhs = cac_d[fg][h];
                                const int rhs = cab_d[f][gh];
                                if (lhs != rhs && assoc_violations++ == 0)
                                    assoc_witness = json{
                                        {"objects", {a, b, c, d}},
                                        {"f", dict[sizes[a] * ns + sizes[b]].tables[f]},
                                        {"g", dict[sizes[b] * ns + sizes[c]].tables[g]},
                                        {"h", dict[sizes[c] * ns + sizes[d]].tables[h]}};
                                if (is_hom[a][c][fg] && is_hom[b][d][gh] &&
                                    is_hom[a][d][lhs] && is_hom[a][d][rhs]) {
                                    ++defined;
                                    if (lhs != rhs && defined_violations++ == 0)
                                        defined_witness = json{
                                            {"objects", {a, b, c, d}},
                                            {"f", dict[sizes[a] * ns + sizes[b]].tables[f]},
                                            {"g", dict[sizes[b] * ns + sizes[c]].tables[g]},
                                            {"h", dict[sizes[c] * ns + sizes[d]].tables[h]}};
                                }
                            }
                        }
                }
            }
        }
    if (assoc_violations == 0)
        rep.passed("composition-associative", triples);
    else {
        assoc_witness["violations"] = assoc_violations;
        rep.failed("composition-associative", triples, assoc_witness);
    }
    if (defined_violations == 0)
        rep.passed("composition-associative-where-defined", defined);
    else {
        defined_witness["violations"] = defined_violations;
        rep.failed("composition-associative-where-defined", defined, defined_witness);
    }
    return rep;
}

}  // namespace qlwb
