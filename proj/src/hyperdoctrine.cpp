// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#include "qlwb/hyperdoctrine.hpp"

#include <algorithm>

namespace qlwb {

std::string to_string(FibreRule rule) {
    switch (rule) {
        case FibreRule::all_tables: return "all";
        case FibreRule::open_tables: return "open";
        case FibreRule::convex_tables: return "convex";
    }
    return "?";
}

FibreRule fibre_rule_from_string(const std::string& name) {
    if (name == "all") return FibreRule::all_tables;
    if (name == "open") return FibreRule::open_tables;
    if (name == "convex") return FibreRule::convex_tables;
    throw StructureError("unknown fibre rule: '" + name + "'");
}

std::string to_string(Adjoint which) {
    switch (which) {
        case Adjoint::forall: return "forall";
        case Adjoint::exists: return "exists";
        case Adjoint::equality: return "equality";
    }
    return "?";
}

const BaseObject& Model::object(const std::string& name) const {
    auto it = objects.find(name);
    if (it == objects.end()) throw StructureError("model has no object named '" + name + "'");
    return it->second;
}

LawReport validate_model(const Model& m) {
    LawReport rep = check_laws(m.omega, m.omega.class_tag);

    bool consistent = true;
    switch (m.fibre_rule) {
        case FibreRule::all_tables:
            break;
        case FibreRule::open_tables:
            consistent = m.base_kind == BaseKind::fintop && m.omega.size() == 2;
            break;
        case FibreRule::convex_tables:
            consistent = m.base_kind == BaseKind::finconv && m.omega.size() == 2;
            break;
    }
    if (consistent)
        rep.passed("fibre-rule-matches-kind", 1);
    else
        rep.failed("fibre-rule-matches-kind", 1,
                   json{{"rule", to_string(m.fibre_rule)},
                        {"kind", to_string(m.base_kind)},
                        {"omega-size", m.omega.size()}});

    for (const auto& [name, x] : m.objects) {
        LawReport obj_rep = validate_object(x);
        if (!obj_rep.ok()) {
            json w = obj_rep.first_failure()->witness;
            w["object"] = name;
            rep.failed("object-valid", static_cast<std::int64_t>(m.objects.size()), w);
            return rep;
        }
        if (x.kind != m.base_kind) {
            rep.failed("object-valid", static_cast<std::int64_t>(m.objects.size()),
                       json{{"object", name}, {"kind", to_string(x.kind)}});
            return rep;
        }
    }
    rep.passed("object-valid", static_cast<std::int64_t>(m.objects.size()));

    // Sampled closure of the fibre under the pointwise lattice operations.
    if (m.fibre_rule != FibreRule::all_tables) {
        std::int64_t sampled = 0;
        for (const auto& [name, x] : m.objects) {
            long long cost = 1;
            for (int i = 0; i < x.size() && cost <= 512; ++i) cost *= m.omega.size();
            if (cost > 512) continue;
            std::vector<Predicate> fibre = enumerate_fibre(m, x);
            if (!in_fibre(m, pred_top(m, x)) || !in_fibre(m, pred_bot(m, x))) {
                rep.failed("fibre-closed-under-ops", sampled, json{{"object", name}});
                return rep;
            }
            for (const auto& u : fibre)
                for (const auto& v : fibre) {
                    ++sampled;
                    Predicate mt{x, u.table}, jn{x, u.table};
                    for (int i = 0; i < x.size(); ++i) {
                        mt.table[i] = m.omega.meet_of(u.table[i], v.table[i]);
                        jn.table[i] = m.omega.join_of(u.table[i], v.table[i]);
                    }
                    if (!in_fibre(m, mt) || !in_fibre(m, jn)) {
                        rep.failed("fibre-closed-under-ops", sampled,
                                   json{{"object", name},
                                        {"u", predicate_to_json(m, u)},
                                        {"v", predicate_to_json(m, v)}});
                        return rep;
                    }
                }
        }
        rep.passed("fibre-closed-under-ops", sampled);
    }
    return rep;
}

json predicate_to_json(const Model& m, const Predicate& v) {
    json j = json::object();
    for (int i = 0; i < v.over.size(); ++i)
        j[v.over.carrier[i]] = m.omega.carrier[v.table[i]];
    return j;
}

bool in_fibre(const Model& m, const Predicate& v) {
    if (v.over.kind != m.base_kind) return false;
    if (static_cast<int>(v.table.size()) != v.over.size()) return false;
    for (int e : v.table)
        if (e < 0 || e >= m.omega.size()) return false;
    if (m.fibre_rule == FibreRule::all_tables) return true;
    std::uint64_t true_set = 0;
    for (int i = 0; i < v.over.size(); ++i)
        if (v.table[i] == m.omega.top) true_set |= 1ull << i;
    return v.over.has_set(true_set);
}

bool pred_leq(const Model& m, const Predicate& u, const Predicate& v) {
    if (!(u.over == v.over)) throw KindError("pred_leq: predicates over different objects");
    for (std::size_t i = 0; i < u.table.size(); ++i)
        if (!m.omega.le(u.table[i], v.table[i])) return false;
    return true;
}

Predicate pred_const(const Model& m, const BaseObject& x, int value) {
    if (value < 0 || value >= m.omega.size())
        throw StructureError("pred_const: omega index out of range");
    return Predicate{x, std::vector<int>(x.size(), value)};
}

Predicate pred_top(const Model& m, const BaseObject& x) { return pred_const(m, x, m.omega.top); }
Predicate pred_bot(const Model& m, const BaseObject& x) { return pred_const(m, x, m.omega.bot); }

namespace {

Predicate checked(const Model& m, Predicate v, const char* op) {
    if (!in_fibre(m, v)) {
        std::uint64_t true_set = 0;
        for (int i = 0; i < v.over.size(); ++i)
            if (v.table[i] == m.omega.top) true_set |= 1ull << i;
        throw LiftingError(std::string(op) + " does not lift: result leaves the fibre",
                           subset_label(v.over, true_set));
    }
    return v;
}

}  // namespace

Predicate pred_meet(const Model& m, const Predicate& u, const Predicate& v) {
    if (!(u.over == v.over)) throw KindError("pred_meet: predicates over different objects");
    Predicate out{u.over, u.table};
    for (std::size_t i = 0; i < out.table.size(); ++i)
        out.table[i] = m.omega.meet_of(u.table[i], v.table[i]);
    return checked(m, std::move(out), "pointwise meet");
}

Predicate pred_join(const Model& m, const Predicate& u, const Predicate& v) {
    if (!(u.over == v.over)) throw KindError("pred_join: predicates over different objects");
    Predicate out{u.over, u.table};
    for (std::size_t i = 0; i < out.table.size(); ++i)
        out.table[i] = m.omega.join_of(u.table[i], v.table[i]);
    return checked(m, std::move(out), "pointwise join");
}

Predicate pred_ortho(const Model& m, const Predicate& u) {
    if (!m.omega.has_ortho()) throw KindError("pred_ortho: omega has no orthocomplement");
    Predicate out{u.over, u.table};
    for (auto& e : out.table) e = m.omega.ortho_of(e);
    return checked(m, std::move(out), "pointwise orthocomplement");
}

Predicate pred_impl(const Model& m, const Predicate& u, const Predicate& v) {
    if (!m.omega.has_impl()) throw KindError("pred_impl: omega has no implication");
    if (!(u.over == v.over)) throw KindError("pred_impl: predicates over different objects");
    Predicate out{u.over, u.table};
    for (std::size_t i = 0; i < out.table.size(); ++i)
        out.table[i] = m.omega.impl_of(u.table[i], v.table[i]);
    return checked(m, std::move(out), "pointwise implication");
}

void for_each_fibre(const Model& m, const BaseObject& x,
                    const std::function<void(const Predicate&)>& fn) {
    long long total = 1;
    for (int i = 0; i < x.size(); ++i) {
        total *= m.omega.size();
        if (total > m.bounds.fibre)
            throw CapacityError("fibre enumeration over " + std::to_string(x.size()) +
                                " points exceeds bound " + std::to_string(m.bounds.fibre));
    }
    Predicate v{x, std::vector<int>(x.size(), 0)};
    for (long long t = 0; t < total; ++t) {
        if (in_fibre(m, v)) fn(v);
        int pos = x.size() - 1;
        while (pos >= 0) {
            if (++v.table[pos] < m.omega.size()) break;
            v.table[pos] = 0;
            --pos;
        }
    }
}

std::vector<Predicate> enumerate_fibre(const Model& m, const BaseObject& x) {
    std::vector<Predicate> out;
    for_each_fibre(m, x, [&](const Predicate& v) { out.push_back(v); });
    return out;
}

Predicate pullback(const Model& m, const BaseMorphism& f, const Predicate& v) {
    if (!(v.over == f.cod)) throw KindError("pullback: predicate is not over the codomain");
    Predicate out{f.dom, std::vector<int>(f.dom.size())};
    for (int i = 0; i < f.dom.size(); ++i) out.table[i] = v.table[f.table[i]];
    return out;  // in the fibre whenever f is a valid morphism
}

namespace {

Predicate quantify_along(const Model& m, const BaseMorphism& f, const Predicate& v,
                         AggregateKind kind, const char* op) {
    if (!(v.over == f.dom)) throw KindError(std::string(op) + ": predicate is not over the domain");
    const int unit = kind == AggregateKind::meet ? m.omega.top : m.omega.bot;
    Predicate out{f.cod, std::vector<int>(f.cod.size(), unit)};
    for (int i = 0; i < f.dom.size(); ++i) {
        const int y = f.table[i];
        out.table[y] = kind == AggregateKind::meet ? m.omega.meet_of(out.table[y], v.table[i])
                                                   : m.omega.join_of(out.table[y], v.table[i]);
    }
    return checked(m, std::move(out), op);
}

}  // namespace

Predicate forall_along(const Model& m, const BaseMorphism& f, const Predicate& v) {
    return quantify_along(m, f, v, AggregateKind::meet, "universal quantifier");
}

Predicate exists_along(const Model& m, const BaseMorphism& f, const Predicate& v) {
    return quantify_along(m, f, v, AggregateKind::join, "existential quantifier");
}

Predicate equality_along(const Model& m, const Predicate& v) {
    const BaseObject& x = v.over;
    Product p = product(x, x);
    Predicate out{p.object, std::vector<int>(p.object.size(), m.omega.bot)};
    for (int i = 0; i < x.size(); ++i) out.table[i * x.size() + i] = v.table[i];
    return checked(m, std::move(out), "equality");
}

Comprehension comprehension(const Model& m, const Predicate& v) {
    const BaseObject& x = v.over;
    std::vector<int> kept;
    for (int i = 0; i < x.size(); ++i)
        if (v.table[i] == m.omega.top) kept.push_back(i);

    BaseObject sub;
    sub.kind = x.kind;
    std::vector<int> position(x.size(), -1);
    for (std::size_t s = 0; s < kept.size(); ++s) {
        sub.carrier.push_back(x.carrier[kept[s]]);
        position[kept[s]] = static_cast<int>(s);
    }
    if (x.kind != BaseKind::finset) {
        std::vector<std::uint64_t> traces;
        for (std::uint64_t set : x.structure) {
            std::uint64_t trace = 0;
            for (std::size_t s = 0; s < kept.size(); ++s)
                if (set & (1ull << kept[s])) trace |= 1ull << s;
            traces.push_back(trace);
        }
        std::sort(traces.begin(), traces.end());
        traces.erase(std::unique(traces.begin(), traces.end()), traces.end());
        sub.structure = std::move(traces);
    }

    Comprehension out;
    out.object = std::move(sub);
    out.inclusion = BaseMorphism{out.object, x, std::move(kept)};
    return out;
}

LawReport check_adjunction(const Model& m, Adjoint which, const BaseObject& x,
                           const BaseObject& y) {
    LawReport rep;
    const std::string law = "adjunction-" + to_string(which);

    if (which == Adjoint::equality) {
        Product p = product(x, x);
        const BaseMorphism delta = diagonal(x);
        std::vector<Predicate> fibre_x = enumerate_fibre(m, x);
        std::vector<Predicate> fibre_xx = enumerate_fibre(m, p.object);
        std::int64_t instances = 0;
        for (const auto& u : fibre_x) {
            const Predicate eq_u = equality_along(m, u);
            for (const auto& w : fibre_xx) {
                ++instances;
                const bool lhs = pred_leq(m, eq_u, w);
                const bool rhs = pred_leq(m, u, pullback(m, delta, w));
                if (lhs != rhs) {
                    rep.failed(law, instances,
                               json{{"u", predicate_to_json(m, u)},
                                    {"w", predicate_to_json(m, w)},
                                    {"eq<=w", lhs},
                                    {"u<=delta*w", rhs}});
                    return rep;
                }
            }
        }
        rep.passed(law, instances);
        return rep;
    }

    Product p = product(x, y);
    const BaseMorphism& pi = p.proj2;
    std::vector<Predicate> fibre_xy = enumerate_fibre(m, p.object);
    std::vector<Predicate> fibre_y = enumerate_fibre(m, y);
    std::vector<Predicate> pulled;
    pulled.reserve(fibre_y.size());
    for (const auto& w : fibre_y) pulled.push_back(pullback(m, pi, w));

    std::int64_t instances = 0;
    for (const auto& v : fibre_xy) {
        const Predicate q = which == Adjoint::forall ? forall_along(m, pi, v)
                                                     : exists_along(m, pi, v);
        for (std::size_t wi = 0; wi < fibre_y.size(); ++wi) {
            ++instances;
            bool lhs, rhs;
            if (which == Adjoint::forall) {
                lhs = pred_leq(m, pulled[wi], v);       // π*(w) <= v
                rhs = pred_leq(m, fibre_y[wi], q);      // w <= ∀v
            } else {
                lhs = pred_leq(m, q, fibre_y[wi]);      // ∃v <= w
                rhs = pred_leq(m, v, pulled[wi]);       // v <= π*(w)
            }
            if (lhs != rhs) {
                rep.failed(law, instances,
                           json{{"v", predicate_to_json(m, v)},
                                {"w", predicate_to_json(m, fibre_y[wi])}});
                return rep;
            }
        }
    }
    rep.passed(law, instances);
    return rep;
}

LawReport check_beck_chevalley(const Model& m, Adjoint which, const BaseObject& x,
                               const BaseObject& y, const BaseObject& z) {
    if (which == Adjoint::equality)
        throw KindError("Beck-Chevalley check covers forall and exists only");
    LawReport rep;
    const std::string law = "beck-chevalley-" + to_string(which);

    Product pxy = product(x, y);
    Product pxz = product(x, z);
    std::vector<BaseMorphism> arrows = enumerate_morphisms(z, y, m.bounds.morphisms);

    // X×f : X×Z -> X×Y for each f : Z -> Y.
    std::vector<BaseMorphism> lifted;
    lifted.reserve(arrows.size());
    for (const auto& f : arrows) {
        BaseMorphism xf{pxz.object, pxy.object, std::vector<int>(pxz.object.size())};
        for (int i = 0; i < x.size(); ++i)
            for (int k = 0; k < z.size(); ++k)
                xf.table[i * z.size() + k] = i * y.size() + f.table[k];
        lifted.push_back(std::move(xf));
    }

    std::int64_t instances = 0;
    bool failed = false;
    for_each_fibre(m, pxy.object, [&](const Predicate& v) {
        if (failed) return;
        const Predicate qv = which == Adjoint::forall ? forall_along(m, pxy.proj2, v)
                                                      : exists_along(m, pxy.proj2, v);
        for (std::size_t a = 0; a < arrows.size(); ++a) {
            ++instances;
            const Predicate lhs = pullback(m, arrows[a], qv);
            const Predicate sub = pullback(m, lifted[a], v);
            const Predicate rhs = which == Adjoint::forall ? forall_along(m, pxz.proj2, sub)
                                                           : exists_along(m, pxz.proj2, sub);
            if (!(lhs.table == rhs.table)) {
                json wf = json::object();
                for (int k = 0; k < z.size(); ++k)
                    wf[z.carrier[k]] = y.carrier[arrows[a].table[k]];
                rep.failed(law, instances,
                           json{{"f", wf},
                                {"v", predicate_to_json(m, v)},
                                {"lhs", predicate_to_json(m, lhs)},
                                {"rhs", predicate_to_json(m, rhs)}});
                failed = true;
                return;
            }
        }
    });
    if (!failed) rep.passed(law, instances);
    return rep;
}

std::optional<std::pair<Predicate, Predicate>> check_frobenius(const Model& m,
                                                               const BaseObject& x,
                                                               const BaseObject& y) {
    Product p = product(x, y);
    const BaseMorphism& pi = p.proj2;
    std::vector<Predicate> fibre_y = enumerate_fibre(m, y);
    std::vector<Predicate> pulled;
    pulled.reserve(fibre_y.size());
    for (const auto& w : fibre_y) pulled.push_back(pullback(m, pi, w));

    std::optional<std::pair<Predicate, Predicate>> found;
    for_each_fibre(m, p.object, [&](const Predicate& v) {
        if (found) return;
        const Predicate ev = exists_along(m, pi, v);
        for (std::size_t wi = 0; wi < fibre_y.size(); ++wi) {
            const Predicate lhs = exists_along(m, pi, pred_meet(m, v, pulled[wi]));
            const Predicate rhs = pred_meet(m, ev, fibre_y[wi]);
            if (!(lhs.table == rhs.table)) {
                found = std::make_pair(v, fibre_y[wi]);
                return;
            }
        }
    });
    return found;
}

std::vector<BaseMorphism> grothendieck_hom(const Model& m, const Predicate& u,
                                           const Predicate& v) {
    std::vector<BaseMorphism> out;
    for (auto& f : enumerate_morphisms(u.over, v.over, m.bounds.morphisms))
        if (pred_leq(m, u, pullback(m, f, v))) out.push_back(std::move(f));
    return out;
}

LawReport check_comprehension_adjunction(const Model& m, const BaseObject& y,
                                         const Predicate& v) {
    LawReport rep;
    Comprehension comp = comprehension(m, v);

    // Arrows ⊤(Y) -> (X, v) in the total category are exactly the maps
    // landing where v is top; they must correspond to maps Y -> {v}.
    std::vector<BaseMorphism> into_truth = grothendieck_hom(m, pred_top(m, y), v);
    std::vector<BaseMorphism> into_sub = enumerate_morphisms(y, comp.object, m.bounds.morphisms);

    if (static_cast<long long>(into_truth.size()) != static_cast<long long>(into_sub.size())) {
        rep.failed("comprehension-bijection",
                   static_cast<std::int64_t>(into_truth.size() + into_sub.size()),
                   json{{"hom-total", into_truth.size()}, {"hom-base", into_sub.size()}});
        return rep;
    }
    rep.passed("comprehension-bijection", static_cast<std::int64_t>(into_truth.size()));

    // Corestriction then inclusion must recover each arrow, and must be
    // natural under precomposition with arrows into Y.
    std::vector<int> position(v.over.size(), -1);
    for (int s = 0; s < comp.object.size(); ++s) position[comp.inclusion.table[s]] = s;

    auto corestrict = [&](const BaseMorphism& f) {
        BaseMorphism core{f.dom, comp.object, std::vector<int>(f.table.size())};
        for (std::size_t i = 0; i < f.table.size(); ++i) core.table[i] = position[f.table[i]];
        return core;
    };

    std::int64_t core_instances = 0, nat_instances = 0;
    for (const auto& f : into_truth) {
        const BaseMorphism core = corestrict(f);
        ++core_instances;
        if (!(compose(core, comp.inclusion) == f) ||
            std::find(into_sub.begin(), into_sub.end(), core) == into_sub.end()) {
            rep.failed("comprehension-corestriction", core_instances, json{{"f", f.table}});
            return rep;
        }
        for (const BaseObject& w : {terminal(m.base_kind), y})
            for (const auto& g : enumerate_morphisms(w, y, m.bounds.morphisms)) {
                ++nat_instances;
                if (!(compose(g, core) == corestrict(compose(g, f)))) {
                    rep.failed("comprehension-naturality", nat_instances,
                               json{{"f", f.table}, {"g", g.table}});
                    return rep;
                }
            }
    }
    rep.passed("comprehension-corestriction", core_instances);
    rep.passed("comprehension-naturality", nat_instances);
    return rep;
}

LawReport check_generic_object(const Model& m, const BaseObject& x) {
    if (m.base_kind != BaseKind::finset)
        throw KindError("generic object check requires a finset model");
    LawReport rep;

    const BaseObject omega_obj = make_finset(m.omega.carrier);
    std::vector<Predicate> fibre = enumerate_fibre(m, x);
    std::vector<BaseMorphism> homs = enumerate_morphisms(x, omega_obj, m.bounds.morphisms);

    if (fibre.size() != homs.size()) {
        rep.failed("generic-bijection", static_cast<std::int64_t>(fibre.size() + homs.size()),
                   json{{"fibre", fibre.size()}, {"homs", homs.size()}});
        return rep;
    }
    // Both enumerations are lexicographic, so the bijection is positional
    // and is literally the identity on tables.
    for (std::size_t i = 0; i < fibre.size(); ++i)
        if (fibre[i].table != homs[i].table) {
            rep.failed("generic-bijection", static_cast<std::int64_t>(i + 1),
                       json{{"index", i}});
            return rep;
        }
    rep.passed("generic-bijection", static_cast<std::int64_t>(fibre.size()));

    // Pullback is precomposition on every arrow from small test objects.
    std::int64_t instances = 0;
    for (int n = 0; n <= 2; ++n) {
        const BaseObject w = canonical_finset(n, "w");
        for (const auto& f : enumerate_morphisms(w, x, m.bounds.morphisms))
            for (const auto& v : fibre) {
                ++instances;
                const Predicate pulled = pullback(m, f, v);
                const BaseMorphism vm{x, omega_obj, v.table};
                if (pulled.table != compose(f, vm).table) {
                    rep.failed("generic-pullback-precomposition", instances,
                               json{{"f", f.table}, {"v", predicate_to_json(m, v)}});
                    return rep;
                }
            }
    }
    rep.passed("generic-pullback-precomposition", instances);

    // Cartesian-closed cross-check: the exponential Ω̂^X has one point per
    // fibre member.
    const BaseObject expo = exponential(x, omega_obj);
    if (static_cast<std::size_t>(expo.size()) == fibre.size())
        rep.passed("generic-exponential-count", expo.size());
    else
        rep.failed("generic-exponential-count", expo.size(),
                   json{{"exponential", expo.size()}, {"fibre", fibre.size()}});
    return rep;
}

}  // namespace qlwb
