// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#include "qlwb/algebra.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace qlwb {

std::string to_string(ClassTag tag) {
    switch (tag) {
        case ClassTag::poset: return "poset";
        case ClassTag::bounded_lattice: return "bounded-lattice";
        case ClassTag::distributive: return "distributive";
        case ClassTag::heyting: return "heyting";
        case ClassTag::frame: return "frame";
        case ClassTag::boolean: return "boolean";
        case ClassTag::ortholattice: return "ortholattice";
        case ClassTag::orthomodular: return "orthomodular";
    }
    return "?";
}

ClassTag class_tag_from_string(const std::string& name) {
    static const std::vector<std::pair<std::string, ClassTag>> table = {
        {"poset", ClassTag::poset},
        {"bounded-lattice", ClassTag::bounded_lattice},
        {"distributive", ClassTag::distributive},
        {"heyting", ClassTag::heyting},
        {"frame", ClassTag::frame},
        {"boolean", ClassTag::boolean},
        {"ortholattice", ClassTag::ortholattice},
        {"orthomodular", ClassTag::orthomodular},
    };
    for (const auto& [n, t] : table)
        if (n == name) return t;
    throw StructureError("unknown algebra class: '" + name + "'");
}

int FiniteAlgebra::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (carrier[i] == label) return i;
    return -1;
}

namespace {

void check_square(const std::string& name, const std::vector<std::vector<int>>& t, int n) {
    if (static_cast<int>(t.size()) != n)
        throw StructureError(name + " table has " + std::to_string(t.size()) +
                             " rows, expected " + std::to_string(n));
    for (const auto& row : t) {
        if (static_cast<int>(row.size()) != n)
            throw StructureError(name + " table has a row of size " +
                                 std::to_string(row.size()) + ", expected " + std::to_string(n));
        for (int v : row)
            if (v < 0 || v >= n)
                throw StructureError(name + " table holds out-of-range index " + std::to_string(v));
    }
}

json pair_witness(const FiniteAlgebra& a, int x, int y) {
    return json{{"x", a.carrier[x]}, {"y", a.carrier[y]}};
}

json triple_witness(const FiniteAlgebra& a, int x, int y, int z) {
    return json{{"x", a.carrier[x]}, {"y", a.carrier[y]}, {"z", a.carrier[z]}};
}

void check_order_laws(const FiniteAlgebra& a, LawReport& rep) {
    const int n = a.size();
    std::int64_t count = n;
    for (int x = 0; x < n; ++x) {
        if (!a.le(x, x)) {
            rep.failed("leq-reflexive", count, json{{"x", a.carrier[x]}});
            goto antisym;
        }
    }
    rep.passed("leq-reflexive", count);
antisym:
    count = static_cast<std::int64_t>(n) * n;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (x != y && a.le(x, y) && a.le(y, x)) {
                rep.failed("leq-antisymmetric", count, pair_witness(a, x, y));
                goto trans;
            }
    rep.passed("leq-antisymmetric", count);
trans:
    count = static_cast<std::int64_t>(n) * n * n;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (a.le(x, y) && a.le(y, z) && !a.le(x, z)) {
                    rep.failed("leq-transitive", count, triple_witness(a, x, y, z));
                    return;
                }
    rep.passed("leq-transitive", count);
}

void check_lattice_laws(const FiniteAlgebra& a, LawReport& rep) {
    const int n = a.size();
    const std::int64_t count = static_cast<std::int64_t>(n) * n;

    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
        for (int y = 0; y < n && ok; ++y) {
            const int m = a.meet_of(x, y);
            bool is_glb = a.le(m, x) && a.le(m, y);
            for (int z = 0; z < n && is_glb; ++z)
                if (a.le(z, x) && a.le(z, y) && !a.le(z, m)) is_glb = false;
            if (!is_glb) {
                json w = pair_witness(a, x, y);
                w["meet"] = a.carrier[m];
                rep.failed("meet-is-glb", count, w);
                ok = false;
            }
        }
    if (ok) rep.passed("meet-is-glb", count);

    ok = true;
    for (int x = 0; x < n && ok; ++x)
        for (int y = 0; y < n && ok; ++y) {
            const int j = a.join_of(x, y);
            bool is_lub = a.le(x, j) && a.le(y, j);
            for (int z = 0; z < n && is_lub; ++z)
                if (a.le(x, z) && a.le(y, z) && !a.le(j, z)) is_lub = false;
            if (!is_lub) {
                json w = pair_witness(a, x, y);
                w["join"] = a.carrier[j];
                rep.failed("join-is-lub", count, w);
                ok = false;
            }
        }
    if (ok) rep.passed("join-is-lub", count);
}

void check_bound_laws(const FiniteAlgebra& a, LawReport& rep) {
    const int n = a.size();
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
        if (!a.le(a.bot, x)) {
            rep.failed("bot-least", n, json{{"x", a.carrier[x]}});
            ok = false;
        }
    if (ok) rep.passed("bot-least", n);

    ok = true;
    for (int x = 0; x < n && ok; ++x)
        if (!a.le(x, a.top)) {
            rep.failed("top-greatest", n, json{{"x", a.carrier[x]}});
            ok = false;
        }
    if (ok) rep.passed("top-greatest", n);
}

void check_distributivity(const FiniteAlgebra& a, LawReport& rep) {
    const int n = a.size();
    const std::int64_t count = static_cast<std::int64_t>(n) * n * n;
    if (auto cx = find_distributivity_counterexample(a)) {
        auto [x, y, z] = *cx;
        json w = triple_witness(a, x, y, z);
        w["lhs"] = a.carrier[a.meet_of(x, a.join_of(y, z))];
        w["rhs"] = a.carrier[a.join_of(a.meet_of(x, y), a.meet_of(x, z))];
        rep.failed("distributivity", count, w);
    } else {
        rep.passed("distributivity", count);
    }
}

void check_residuation(const FiniteAlgebra& a, LawReport& rep) {
    const int n = a.size();
    if (!a.has_impl()) {
        rep.failed("implication-present", 1, json{{"missing", "impl"}});
        return;
    }
    rep.passed("implication-present", 1);
    const std::int64_t count = static_cast<std::int64_t>(n) * n * n;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const bool lhs = a.le(a.meet_of(x, y), z);
                const bool rhs = a.le(x, a.impl_of(y, z));
                if (lhs != rhs) {
                    json w = triple_witness(a, x, y, z);
                    w["impl"] = a.carrier[a.impl_of(y, z)];
                    rep.failed("residuation", count, w);
                    return;
                }
            }
    rep.passed("residuation", count);
}

void check_ortho_laws(const FiniteAlgebra& a, LawReport& rep) {
    const int n = a.size();
    if (!a.has_ortho()) {
        rep.failed("ortho-present", 1, json{{"missing", "ortho"}});
        return;
    }
    rep.passed("ortho-present", 1);

    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
        if (a.ortho_of(a.ortho_of(x)) != x) {
            rep.failed("ortho-involution", n, json{{"x", a.carrier[x]}});
            ok = false;
        }
    if (ok) rep.passed("ortho-involution", n);

    ok = true;
    const std::int64_t count = static_cast<std::int64_t>(n) * n;
    for (int x = 0; x < n && ok; ++x)
        for (int y = 0; y < n && ok; ++y)
            if (a.le(x, y) && !a.le(a.ortho_of(y), a.ortho_of(x))) {
                rep.failed("ortho-antitone", count, pair_witness(a, x, y));
                ok = false;
            }
    if (ok) rep.passed("ortho-antitone", count);

    ok = true;
    for (int x = 0; x < n && ok; ++x)
        if (a.meet_of(x, a.ortho_of(x)) != a.bot) {
            rep.failed("ortho-complement-meet", n, json{{"x", a.carrier[x]}});
            ok = false;
        }
    if (ok) rep.passed("ortho-complement-meet", n);

    ok = true;
    for (int x = 0; x < n && ok; ++x)
        if (a.join_of(x, a.ortho_of(x)) != a.top) {
            rep.failed("ortho-complement-join", n, json{{"x", a.carrier[x]}});
            ok = false;
        }
    if (ok) rep.passed("ortho-complement-join", n);
}

void check_orthomodular_law(const FiniteAlgebra& a, LawReport& rep) {
    const int n = a.size();
    const std::int64_t count = static_cast<std::int64_t>(n) * n;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (a.le(x, y)) {
                const int recovered = a.join_of(x, a.meet_of(a.ortho_of(x), y));
                if (recovered != y) {
                    json w = pair_witness(a, x, y);
                    w["join"] = a.carrier[recovered];
                    rep.failed("orthomodular", count, w);
                    return;
                }
            }
    rep.passed("orthomodular", count);
}

}  // namespace

void validate_structure(const FiniteAlgebra& a) {
    const int n = a.size();
    if (n == 0) throw StructureError("carrier is empty");
    if (static_cast<int>(a.leq.size()) != n)
        throw StructureError("leq table has " + std::to_string(a.leq.size()) +
                             " rows, expected " + std::to_string(n));
    for (const auto& row : a.leq)
        if (static_cast<int>(row.size()) != n)
            throw StructureError("leq table has a row of size " + std::to_string(row.size()) +
                                 ", expected " + std::to_string(n));
    check_square("meet", a.meet, n);
    check_square("join", a.join, n);
    if (a.has_ortho()) {
        if (static_cast<int>(a.ortho.size()) != n)
            throw StructureError("ortho table has size " + std::to_string(a.ortho.size()) +
                                 ", expected " + std::to_string(n));
        for (int v : a.ortho)
            if (v < 0 || v >= n)
                throw StructureError("ortho table holds out-of-range index " + std::to_string(v));
    }
    if (a.has_impl()) check_square("impl", a.impl, n);
    if (a.bot < 0 || a.bot >= n) throw StructureError("bot index out of range");
    if (a.top < 0 || a.top >= n) throw StructureError("top index out of range");
}

LawReport check_laws(const FiniteAlgebra& a, ClassTag tag) {
    validate_structure(a);
    LawReport rep;
    check_order_laws(a, rep);
    if (tag == ClassTag::poset) return rep;

    check_lattice_laws(a, rep);
    check_bound_laws(a, rep);

    switch (tag) {
        case ClassTag::bounded_lattice:
            break;
        case ClassTag::distributive:
        case ClassTag::frame:
            check_distributivity(a, rep);
            break;
        case ClassTag::heyting:
            check_distributivity(a, rep);
            check_residuation(a, rep);
            break;
        case ClassTag::boolean:
            check_distributivity(a, rep);
            check_ortho_laws(a, rep);
            break;
        case ClassTag::ortholattice:
            check_ortho_laws(a, rep);
            break;
        case ClassTag::orthomodular:
            check_ortho_laws(a, rep);
            if (a.has_ortho()) check_orthomodular_law(a, rep);
            break;
        case ClassTag::poset:
            break;
    }
    return rep;
}

namespace {

/// Derives meet/join tables as glb/lub of the given order. Generators use
/// this so the only hand-written data is the order and the complement.
void derive_tables(FiniteAlgebra& a) {
    const int n = a.size();
    a.meet.assign(n, std::vector<int>(n, -1));
    a.join.assign(n, std::vector<int>(n, -1));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            for (int m = 0; m < n; ++m) {
                if (!a.le(m, x) || !a.le(m, y)) continue;
                bool greatest = true;
                for (int z = 0; z < n && greatest; ++z)
                    if (a.le(z, x) && a.le(z, y) && !a.le(z, m)) greatest = false;
                if (greatest) {
                    a.meet[x][y] = m;
                    break;
                }
            }
            for (int j = 0; j < n; ++j) {
                if (!a.le(x, j) || !a.le(y, j)) continue;
                bool least = true;
                for (int z = 0; z < n && least; ++z)
                    if (a.le(x, z) && a.le(y, z) && !a.le(j, z)) least = false;
                if (least) {
                    a.join[x][y] = j;
                    break;
                }
            }
            if (a.meet[x][y] < 0 || a.join[x][y] < 0)
                throw StructureError("order is not a lattice at (" + a.carrier[x] + ", " +
                                     a.carrier[y] + ")");
        }
}

}  // namespace

FiniteAlgebra mo2() {
    FiniteAlgebra a;
    a.carrier = {"0", "a", "a'", "b", "b'", "1"};
    const int n = 6;
    a.leq.assign(n, std::vector<bool>(n, false));
    for (int x = 0; x < n; ++x) {
        a.leq[x][x] = true;
        a.leq[0][x] = true;
        a.leq[x][5] = true;
    }
    a.ortho = {5, 2, 1, 4, 3, 0};
    a.bot = 0;
    a.top = 5;
    a.class_tag = ClassTag::orthomodular;
    derive_tables(a);
    return a;
}

FiniteAlgebra o6() {
    FiniteAlgebra a;
    a.carrier = {"0", "a", "b", "b'", "a'", "1"};
    const int n = 6;
    a.leq.assign(n, std::vector<bool>(n, false));
    for (int x = 0; x < n; ++x) {
        a.leq[x][x] = true;
        a.leq[0][x] = true;
        a.leq[x][5] = true;
    }
    a.leq[1][2] = true;  // a < b
    a.leq[3][4] = true;  // b' < a'
    a.ortho = {5, 4, 3, 2, 1, 0};
    a.bot = 0;
    a.top = 5;
    a.class_tag = ClassTag::ortholattice;
    derive_tables(a);
    return a;
}

FiniteAlgebra boolean_algebra(int k, int max_atoms) {
    if (k < 0) throw StructureError("atom count must be nonnegative");
    if (k > max_atoms)
        throw CapacityError("boolean_algebra: " + std::to_string(k) + " atoms exceeds bound " +
                            std::to_string(max_atoms));
    const int n = 1 << k;
    std::vector<unsigned> masks(n);
    std::iota(masks.begin(), masks.end(), 0u);
    std::sort(masks.begin(), masks.end(), [](unsigned lhs, unsigned rhs) {
        const int pl = std::popcount(lhs), pr = std::popcount(rhs);
        return pl != pr ? pl < pr : lhs < rhs;
    });
    std::vector<int> index(n);
    for (int i = 0; i < n; ++i) index[masks[i]] = i;

    const unsigned full = static_cast<unsigned>(n - 1);
    FiniteAlgebra a;
    a.carrier.reserve(n);
    for (unsigned m : masks) {
        if (m == 0 && k > 0)
            a.carrier.push_back("0");
        else if (m == full)
            a.carrier.push_back("1");
        else {
            std::string label;
            for (int i = 0; i < k; ++i)
                if (m & (1u << i)) label += static_cast<char>('a' + i);
            a.carrier.push_back(label);
        }
    }
    a.leq.assign(n, std::vector<bool>(n, false));
    a.meet.assign(n, std::vector<int>(n, 0));
    a.join.assign(n, std::vector<int>(n, 0));
    a.impl.assign(n, std::vector<int>(n, 0));
    a.ortho.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        const unsigned mi = masks[i];
        a.ortho[i] = index[full & ~mi];
        for (int j = 0; j < n; ++j) {
            const unsigned mj = masks[j];
            a.leq[i][j] = (mi & mj) == mi;
            a.meet[i][j] = index[mi & mj];
            a.join[i][j] = index[mi | mj];
            a.impl[i][j] = index[(full & ~mi) | mj];
        }
    }
    a.bot = index[0];
    a.top = index[full];
    a.class_tag = ClassTag::boolean;
    return a;
}

int aggregate(const FiniteAlgebra& a, AggregateKind kind, const std::vector<int>& elems) {
    const int n = a.size();
    for (int e : elems)
        if (e < 0 || e >= n) throw StructureError("aggregate: element index out of range");

    int acc = kind == AggregateKind::meet ? a.top : a.bot;
    for (int e : elems)
        acc = kind == AggregateKind::meet ? a.meet_of(acc, e) : a.join_of(acc, e);

    // The fold only realizes the bound when the tables do; re-verify.
    if (kind == AggregateKind::meet) {
        for (int e : elems)
            if (!a.le(acc, e))
                throw IncompleteAlgebraError("meet of set does not exist (no greatest lower bound)");
        for (int z = 0; z < n; ++z) {
            bool lower = true;
            for (int e : elems)
                if (!a.le(z, e)) lower = false;
            if (lower && !a.le(z, acc))
                throw IncompleteAlgebraError("meet of set does not exist (no greatest lower bound)");
        }
    } else {
        for (int e : elems)
            if (!a.le(e, acc))
                throw IncompleteAlgebraError("join of set does not exist (no least upper bound)");
        for (int z = 0; z < n; ++z) {
            bool upper = true;
            for (int e : elems)
                if (!a.le(e, z)) upper = false;
            if (upper && !a.le(acc, z))
                throw IncompleteAlgebraError("join of set does not exist (no least upper bound)");
        }
    }
    return acc;
}

std::optional<std::array<int, 3>> find_distributivity_counterexample(const FiniteAlgebra& a) {
    const int n = a.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const int lhs = a.meet_of(x, a.join_of(y, z));
                const int rhs = a.join_of(a.meet_of(x, y), a.meet_of(x, z));
                if (lhs != rhs) return std::array<int, 3>{x, y, z};
            }
    return std::nullopt;
}

std::optional<std::vector<int>> find_ortho_isomorphism(const FiniteAlgebra& a,
                                                       const FiniteAlgebra& b) {
    const int n = a.size();
    if (b.size() != n) return std::nullopt;
    if (a.has_ortho() != b.has_ortho()) return std::nullopt;
    if (n > 8) throw CapacityError("isomorphism search capped at 8 elements, got " +
                                   std::to_string(n));

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = perm[a.bot] == b.bot && perm[a.top] == b.top;
        for (int x = 0; x < n && ok; ++x) {
            if (a.has_ortho() && perm[a.ortho_of(x)] != b.ortho_of(perm[x])) ok = false;
            for (int y = 0; y < n && ok; ++y) {
                if (a.le(x, y) != b.le(perm[x], perm[y])) ok = false;
                if (ok && perm[a.meet_of(x, y)] != b.meet_of(perm[x], perm[y])) ok = false;
                if (ok && perm[a.join_of(x, y)] != b.join_of(perm[x], perm[y])) ok = false;
            }
        }
        if (ok) return perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

}  // namespace qlwb
