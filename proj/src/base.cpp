// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#include "qlwb/base.hpp"

#include <algorithm>
#include <set>

namespace qlwb {

std::string to_string(BaseKind kind) {
    switch (kind) {
        case BaseKind::finset: return "finset";
        case BaseKind::fintop: return "fintop";
        case BaseKind::finconv: return "finconv";
    }
    return "?";
}

BaseKind base_kind_from_string(const std::string& name) {
    if (name == "finset") return BaseKind::finset;
    if (name == "fintop") return BaseKind::fintop;
    if (name == "finconv") return BaseKind::finconv;
    throw StructureError("unknown base kind: '" + name + "'");
}

bool BaseObject::has_set(std::uint64_t mask) const {
    return std::binary_search(structure.begin(), structure.end(), mask);
}

int BaseObject::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (carrier[i] == label) return i;
    return -1;
}

namespace {

void normalize_structure(std::vector<std::uint64_t>& structure) {
    std::sort(structure.begin(), structure.end());
    structure.erase(std::unique(structure.begin(), structure.end()), structure.end());
}

void require_small_carrier(const std::vector<std::string>& labels) {
    if (labels.size() > 64)
        throw CapacityError("structured carrier capped at 64 points, got " +
                            std::to_string(labels.size()));
}

}  // namespace

BaseObject make_finset(std::vector<std::string> labels) {
    return BaseObject{BaseKind::finset, std::move(labels), {}};
}

BaseObject make_fintop(std::vector<std::string> labels, std::vector<std::uint64_t> opens) {
    require_small_carrier(labels);
    normalize_structure(opens);
    return BaseObject{BaseKind::fintop, std::move(labels), std::move(opens)};
}

BaseObject make_finconv(std::vector<std::string> labels, std::vector<std::uint64_t> convexes) {
    require_small_carrier(labels);
    normalize_structure(convexes);
    return BaseObject{BaseKind::finconv, std::move(labels), std::move(convexes)};
}

BaseObject canonical_finset(int n, const std::string& prefix) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int i = 1; i <= n; ++i) labels.push_back(prefix + std::to_string(i));
    return make_finset(std::move(labels));
}

std::string subset_label(const BaseObject& x, std::uint64_t mask) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < x.size(); ++i)
        if (mask & (1ull << i)) {
            if (!first) out += ",";
            out += x.carrier[i];
            first = false;
        }
    return out + "}";
}

LawReport validate_object(const BaseObject& x) {
    {
        std::set<std::string> seen;
        for (const auto& l : x.carrier)
            if (!seen.insert(l).second)
                throw StructureError("duplicate carrier label '" + l + "'");
    }
    if (x.kind != BaseKind::finset) require_small_carrier(x.carrier);
    for (std::uint64_t m : x.structure)
        if ((m & ~x.full_mask()) != 0)
            throw StructureError("structure set mentions points outside the carrier");

    LawReport rep;
    if (x.kind == BaseKind::finset) {
        if (x.structure.empty())
            rep.passed("finset-structureless", 1);
        else
            rep.failed("finset-structureless", 1,
                       json{{"sets", static_cast<int>(x.structure.size())}});
        return rep;
    }

    const char* family = x.kind == BaseKind::fintop ? "opens" : "convex-family";
    if (x.has_set(0))
        rep.passed(std::string(family) + "-contain-empty", 1);
    else
        rep.failed(std::string(family) + "-contain-empty", 1, json{{"missing", "{}"}});
    if (x.has_set(x.full_mask()))
        rep.passed(std::string(family) + "-contain-carrier", 1);
    else
        rep.failed(std::string(family) + "-contain-carrier", 1,
                   json{{"missing", subset_label(x, x.full_mask())}});

    const std::int64_t pairs =
        static_cast<std::int64_t>(x.structure.size()) * static_cast<std::int64_t>(x.structure.size());
    if (x.kind == BaseKind::fintop) {
        bool ok = true;
        for (std::uint64_t u : x.structure) {
            for (std::uint64_t v : x.structure)
                if (!x.has_set(u | v)) {
                    rep.failed("opens-closed-under-union", pairs,
                               json{{"u", subset_label(x, u)},
                                    {"v", subset_label(x, v)},
                                    {"union", subset_label(x, u | v)}});
                    ok = false;
                    break;
                }
            if (!ok) break;
        }
        if (ok) rep.passed("opens-closed-under-union", pairs);
    }

    bool ok = true;
    const std::string law = std::string(family) + "-closed-under-intersection";
    for (std::uint64_t u : x.structure) {
        for (std::uint64_t v : x.structure)
            if (!x.has_set(u & v)) {
                rep.failed(law, pairs,
                           json{{"u", subset_label(x, u)},
                                {"v", subset_label(x, v)},
                                {"intersection", subset_label(x, u & v)}});
                ok = false;
                break;
            }
        if (!ok) break;
    }
    if (ok) rep.passed(law, pairs);
    return rep;
}

LawReport validate_morphism(const BaseMorphism& f) {
    if (f.dom.kind != f.cod.kind)
        throw StructureError("morphism between different kinds: " + to_string(f.dom.kind) +
                             " -> " + to_string(f.cod.kind));
    if (static_cast<int>(f.table.size()) != f.dom.size())
        throw StructureError("morphism table has size " + std::to_string(f.table.size()) +
                             ", expected " + std::to_string(f.dom.size()));
    for (int v : f.table)
        if (v < 0 || v >= f.cod.size())
            throw StructureError("morphism table holds out-of-range index " + std::to_string(v));

    LawReport rep;
    rep.passed("totality", f.dom.size());
    if (f.dom.kind == BaseKind::finset) return rep;

    const std::string law =
        f.dom.kind == BaseKind::fintop ? "preimage-open" : "preimage-convex";
    bool ok = true;
    std::int64_t count = 0;
    for (std::uint64_t s : f.cod.structure) {
        ++count;
        std::uint64_t pre = 0;
        for (int i = 0; i < f.dom.size(); ++i)
            if (s & (1ull << f.table[i])) pre |= 1ull << i;
        if (!f.dom.has_set(pre)) {
            rep.failed(law, count,
                       json{{"set", subset_label(f.cod, s)},
                            {"preimage", subset_label(f.dom, pre)}});
            ok = false;
            break;
        }
    }
    if (ok) rep.passed(law, static_cast<std::int64_t>(f.cod.structure.size()));
    return rep;
}

TupleProduct tuple_product(BaseKind kind, const std::vector<BaseObject>& factors) {
    for (const auto& f : factors)
        if (f.kind != kind)
            throw KindError("tuple_product: factor of kind " + to_string(f.kind) +
                            " in a " + to_string(kind) + " product");

    // The unary product is the factor itself.
    if (factors.size() == 1) return TupleProduct{factors[0], {identity(factors[0])}};

    const int k = static_cast<int>(factors.size());
    long long total = 1;
    for (const auto& f : factors) total *= f.size();

    BaseObject obj;
    obj.kind = kind;
    obj.carrier.reserve(total > 0 ? total : 0);
    for (long long idx = 0; idx < total; ++idx) {
        // Decode mixed-radix digits, first factor most significant.
        std::vector<int> digits(k);
        long long rest = idx;
        for (int i = k - 1; i >= 0; --i) {
            digits[i] = static_cast<int>(rest % factors[i].size());
            rest /= factors[i].size();
        }
        std::string label = "(";
        for (int i = 0; i < k; ++i) {
            if (i) label += ",";
            label += factors[i].carrier[digits[i]];
        }
        label += ")";
        obj.carrier.push_back(std::move(label));
    }
    if (k == 0) obj.carrier = {"()"};

    if (kind != BaseKind::finset) {
        require_small_carrier(obj.carrier);
        // Boxes: one structure set per factor, taken over all combinations.
        std::set<std::uint64_t> sets = {0, obj.full_mask()};
        std::vector<std::size_t> choice(k, 0);
        bool done = false;
        for (const auto& f : factors)
            if (f.structure.empty()) done = true;  // malformed factor; keep {∅, full}
        while (!done && total > 0) {
            std::uint64_t box = 0;
            for (long long idx = 0; idx < total; ++idx) {
                long long rest = idx;
                bool inside = true;
                for (int i = k - 1; i >= 0; --i) {
                    const int digit = static_cast<int>(rest % factors[i].size());
                    rest /= factors[i].size();
                    if (!(factors[i].structure[choice[i]] & (1ull << digit))) {
                        inside = false;
                        break;
                    }
                }
                if (inside) box |= 1ull << idx;
            }
            sets.insert(box);
            int pos = k - 1;
            while (pos >= 0) {
                if (++choice[pos] < factors[pos].structure.size()) break;
                choice[pos] = 0;
                --pos;
            }
            if (pos < 0) done = true;
        }
        if (kind == BaseKind::fintop) {
            // Close under unions; intersections of box unions come for free.
            bool changed = true;
            while (changed) {
                changed = false;
                std::vector<std::uint64_t> snapshot(sets.begin(), sets.end());
                for (std::uint64_t u : snapshot)
                    for (std::uint64_t v : snapshot)
                        changed |= sets.insert(u | v).second;
            }
        }
        obj.structure.assign(sets.begin(), sets.end());
    }

    TupleProduct out;
    out.projections.reserve(k);
    for (int j = 0; j < k; ++j) {
        BaseMorphism proj;
        proj.dom = obj;
        proj.cod = factors[j];
        proj.table.resize(obj.size());
        for (long long idx = 0; idx < total; ++idx) {
            long long rest = idx;
            int digit = 0;
            for (int i = k - 1; i >= j; --i) {
                digit = static_cast<int>(rest % factors[i].size());
                rest /= factors[i].size();
            }
            proj.table[idx] = digit;
        }
        out.projections.push_back(std::move(proj));
    }
    out.object = std::move(obj);
    for (auto& p : out.projections) p.dom = out.object;
    return out;
}

Product product(const BaseObject& x, const BaseObject& y) {
    if (x.kind != y.kind)
        throw KindError("product: kind mismatch " + to_string(x.kind) + " vs " + to_string(y.kind));
    TupleProduct t = tuple_product(x.kind, {x, y});
    return Product{std::move(t.object), std::move(t.projections[0]), std::move(t.projections[1])};
}

BaseObject terminal(BaseKind kind) {
    return tuple_product(kind, {}).object;
}

BaseMorphism identity(const BaseObject& x) {
    BaseMorphism f{x, x, std::vector<int>(x.size())};
    for (int i = 0; i < x.size(); ++i) f.table[i] = i;
    return f;
}

BaseMorphism compose(const BaseMorphism& f, const BaseMorphism& g) {
    if (!(f.cod == g.dom)) throw KindError("compose: middle object mismatch");
    BaseMorphism h{f.dom, g.cod, std::vector<int>(f.table.size())};
    for (std::size_t i = 0; i < f.table.size(); ++i) h.table[i] = g.table[f.table[i]];
    return h;
}

BaseMorphism diagonal(const BaseObject& x) {
    Product p = product(x, x);
    BaseMorphism d{x, std::move(p.object), std::vector<int>(x.size())};
    for (int i = 0; i < x.size(); ++i) d.table[i] = i * x.size() + i;
    return d;
}

BaseMorphism tuple_pairing(BaseKind kind, const std::vector<BaseMorphism>& components) {
    std::vector<BaseObject> cods;
    cods.reserve(components.size());
    for (const auto& c : components) {
        if (!components.empty() && !(c.dom == components[0].dom))
            throw KindError("tuple_pairing: components disagree on domain");
        cods.push_back(c.cod);
    }
    TupleProduct t = tuple_product(kind, cods);
    const BaseObject dom = components.empty() ? terminal(kind) : components[0].dom;

    BaseMorphism out{dom, t.object, {}};
    if (components.empty()) {
        out.dom = dom;
        out.table.assign(dom.size(), 0);
        return out;
    }
    out.dom = components[0].dom;
    out.table.resize(out.dom.size());
    for (int i = 0; i < out.dom.size(); ++i) {
        long long idx = 0;
        for (std::size_t j = 0; j < components.size(); ++j)
            idx = idx * components[j].cod.size() + components[j].table[i];
        out.table[i] = static_cast<int>(idx);
    }
    return out;
}

BaseMorphism pairing(const BaseMorphism& f, const BaseMorphism& g) {
    return tuple_pairing(f.dom.kind, {f, g});
}

BaseObject exponential(const BaseObject& x, const BaseObject& y) {
    if (x.kind != BaseKind::finset || y.kind != BaseKind::finset)
        throw KindError("exponential is only defined for finset objects");
    long long total = 1;
    for (int i = 0; i < x.size(); ++i) {
        total *= y.size();
        if (total > 10000)
            throw CapacityError("exponential carrier exceeds 10000 tables");
    }
    if (x.size() > 0 && y.size() == 0) total = 0;

    BaseObject out;
    out.kind = BaseKind::finset;
    std::vector<int> table(x.size(), 0);
    for (long long t = 0; t < total; ++t) {
        std::string label = "[";
        for (int i = 0; i < x.size(); ++i) {
            if (i) label += ",";
            label += y.carrier[table[i]];
        }
        label += "]";
        out.carrier.push_back(std::move(label));
        int pos = x.size() - 1;
        while (pos >= 0) {
            if (++table[pos] < y.size()) break;
            table[pos] = 0;
            --pos;
        }
    }
    return out;
}

std::vector<BaseMorphism> enumerate_morphisms(const BaseObject& x, const BaseObject& y,
                                              long long bound) {
    if (x.kind != y.kind)
        throw KindError("enumerate_morphisms: kind mismatch");
    long long total = 1;
    for (int i = 0; i < x.size(); ++i) {
        total *= y.size();
        if (total > bound)
            throw CapacityError("morphism enumeration exceeds bound " + std::to_string(bound));
        if (total == 0) break;
    }
    std::vector<BaseMorphism> out;
    if (x.size() > 0 && y.size() == 0) return out;

    std::vector<int> table(x.size(), 0);
    for (long long t = 0; t < total; ++t) {
        BaseMorphism f{x, y, table};
        if (x.kind == BaseKind::finset || validate_morphism(f).ok()) out.push_back(std::move(f));
        int pos = x.size() - 1;
        while (pos >= 0) {
            if (++table[pos] < y.size()) break;
            table[pos] = 0;
            --pos;
        }
    }
    return out;
}

}  // namespace qlwb
