// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#include "qlwb/json_io.hpp"

#include <fstream>

#include "qlwb/logic/parser.hpp"

namespace qlwb {

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw StructureError("cannot open file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw StructureError("malformed JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

json algebra_to_json(const FiniteAlgebra& a) {
    json leq = json::array();
    for (const auto& row : a.leq) {
        json r = json::array();
        for (bool b : row) r.push_back(b);
        leq.push_back(std::move(r));
    }
    json j{{"carrier", a.carrier}, {"leq", leq},      {"meet", a.meet},
           {"join", a.join},       {"bot", a.bot},    {"top", a.top},
           {"class", to_string(a.class_tag)}};
    if (a.has_ortho()) j["ortho"] = a.ortho;
    if (a.has_impl()) j["impl"] = a.impl;
    return j;
}

FiniteAlgebra algebra_from_json(const json& j) {
    FiniteAlgebra a;
    try {
        a.carrier = j.at("carrier").get<std::vector<std::string>>();
        for (const auto& row : j.at("leq")) {
            std::vector<bool> r;
            for (const auto& b : row) r.push_back(b.get<bool>());
            a.leq.push_back(std::move(r));
        }
        a.meet = j.at("meet").get<std::vector<std::vector<int>>>();
        a.join = j.at("join").get<std::vector<std::vector<int>>>();
        if (j.contains("ortho")) a.ortho = j.at("ortho").get<std::vector<int>>();
        if (j.contains("impl")) a.impl = j.at("impl").get<std::vector<std::vector<int>>>();
        a.bot = j.at("bot").get<int>();
        a.top = j.at("top").get<int>();
        a.class_tag = class_tag_from_string(j.at("class").get<std::string>());
    } catch (const json::exception& e) {
        throw StructureError(std::string("malformed algebra JSON: ") + e.what());
    }
    validate_structure(a);
    return a;
}

FiniteAlgebra load_algebra(const std::string& name_or_path) {
    if (name_or_path == "mo2") return mo2();
    if (name_or_path == "o6") return o6();
    if (name_or_path == "chain2") return two_chain();
    if (name_or_path.rfind("boolean:", 0) == 0)
        return boolean_algebra(std::stoi(name_or_path.substr(8)));
    return algebra_from_json(read_json_file(name_or_path));
}

namespace {

std::uint64_t set_from_labels(const BaseObject& x, const json& labels) {
    std::uint64_t mask = 0;
    for (const auto& l : labels) {
        const int i = x.index_of(l.get<std::string>());
        if (i < 0)
            throw StructureError("structure set mentions unknown point '" +
                                 l.get<std::string>() + "'");
        mask |= 1ull << i;
    }
    return mask;
}

json labels_from_set(const BaseObject& x, std::uint64_t mask) {
    json out = json::array();
    for (int i = 0; i < x.size(); ++i)
        if (mask & (1ull << i)) out.push_back(x.carrier[i]);
    return out;
}

}  // namespace

json object_to_json(const BaseObject& x) {
    json j{{"kind", to_string(x.kind)}, {"carrier", x.carrier}};
    if (x.kind != BaseKind::finset) {
        json sets = json::array();
        for (std::uint64_t s : x.structure) sets.push_back(labels_from_set(x, s));
        j[x.kind == BaseKind::fintop ? "opens" : "convex"] = std::move(sets);
    }
    return j;
}

BaseObject object_from_json(const json& j) {
    BaseObject x;
    try {
        x.kind = base_kind_from_string(j.value("kind", "finset"));
        x.carrier = j.at("carrier").get<std::vector<std::string>>();
        if (x.kind != BaseKind::finset) {
            const char* key = x.kind == BaseKind::fintop ? "opens" : "convex";
            std::vector<std::uint64_t> sets;
            for (const auto& labels : j.at(key)) sets.push_back(set_from_labels(x, labels));
            x = x.kind == BaseKind::fintop ? make_fintop(x.carrier, std::move(sets))
                                           : make_finconv(x.carrier, std::move(sets));
        }
    } catch (const json::exception& e) {
        throw StructureError(std::string("malformed object JSON: ") + e.what());
    }
    const LawReport rep = validate_object(x);
    if (!rep.ok())
        throw StructureError("object violates " + rep.first_failure()->law + ": " +
                             rep.first_failure()->witness.dump());
    return x;
}

json morphism_to_json(const BaseMorphism& f) {
    json table = json::object();
    for (std::size_t i = 0; i < f.table.size(); ++i)
        table[f.dom.carrier[i]] = f.cod.carrier[f.table[i]];
    return json{{"dom", object_to_json(f.dom)}, {"cod", object_to_json(f.cod)},
                {"table", table}};
}

BaseMorphism morphism_from_json(const json& j) {
    BaseMorphism f;
    f.dom = object_from_json(j.at("dom"));
    f.cod = object_from_json(j.at("cod"));
    f.table.assign(f.dom.size(), -1);
    for (const auto& [from, to] : j.at("table").items()) {
        const int i = f.dom.index_of(from);
        const int k = f.cod.index_of(to.get<std::string>());
        if (i < 0) throw StructureError("morphism table mentions unknown point '" + from + "'");
        if (k < 0)
            throw StructureError("morphism table mentions unknown point '" +
                                 to.get<std::string>() + "'");
        f.table[i] = k;
    }
    for (int i = 0; i < f.dom.size(); ++i)
        if (f.table[i] < 0)
            throw StructureError("morphism table misses point '" + f.dom.carrier[i] + "'");
    const LawReport rep = validate_morphism(f);
    if (!rep.ok())
        throw StructureError("morphism violates " + rep.first_failure()->law + ": " +
                             rep.first_failure()->witness.dump());
    return f;
}

SubspaceLatticeSpec subspace_spec_from_json(const json& j) {
    SubspaceLatticeSpec spec;
    try {
        spec.dim = j.at("dim").get<int>();
        spec.size_cap = j.value("size_cap", 50);
        for (const auto& gen : j.at("generators")) {
            SubspaceMatrix m;
            for (const auto& vec : gen) {
                std::vector<Rational> v;
                for (const auto& entry : vec) v.push_back(parse_rational(entry.get<std::string>()));
                m.push_back(std::move(v));
            }
            spec.generators.push_back(std::move(m));
        }
    } catch (const json::exception& e) {
        throw StructureError(std::string("malformed subspace spec JSON: ") + e.what());
    }
    return spec;
}

namespace {

logic::Signature signature_from_json(const Model& m, const json& j) {
    logic::Signature sig;
    for (const auto& [name, obj] : j.value("sorts", json::object()).items()) {
        if (obj.is_string())
            sig.sorts[name] = m.object(obj.get<std::string>());
        else
            sig.sorts[name] = object_from_json(obj);
    }
    for (const auto& [name, fj] : j.value("functions", json::object()).items()) {
        logic::FunctionSymbol fn;
        for (const auto& a : fj.at("args"))
            fn.args.push_back(logic::parse_sort(a.get<std::string>()));
        fn.result = logic::parse_sort(fj.at("result").get<std::string>());
        std::vector<BaseObject> arg_objs;
        for (const auto& a : fn.args) arg_objs.push_back(logic::resolve_sort(sig, a));
        const BaseObject dom = tuple_product(m.base_kind, arg_objs).object;
        const BaseObject cod = logic::resolve_sort(sig, fn.result);
        fn.morphism.dom = dom;
        fn.morphism.cod = cod;
        fn.morphism.table.assign(dom.size(), -1);
        for (const auto& [from, to] : fj.at("table").items()) {
            const int i = dom.index_of(from);
            const int k = cod.index_of(to.get<std::string>());
            if (i < 0 || k < 0)
                throw StructureError("function '" + name + "': unknown point in table");
            fn.morphism.table[i] = k;
        }
        for (int i = 0; i < dom.size(); ++i)
            if (fn.morphism.table[i] < 0)
                throw StructureError("function '" + name + "': table misses point '" +
                                     dom.carrier[i] + "'");
        sig.functions[name] = std::move(fn);
    }
    for (const auto& [name, pj] : j.value("predicates", json::object()).items()) {
        logic::PredicateSymbol ps;
        for (const auto& a : pj.at("args"))
            ps.args.push_back(logic::parse_sort(a.get<std::string>()));
        std::vector<BaseObject> arg_objs;
        for (const auto& a : ps.args) arg_objs.push_back(logic::resolve_sort(sig, a));
        ps.predicate.over = tuple_product(m.base_kind, arg_objs).object;
        ps.predicate.table.assign(ps.predicate.over.size(), -1);
        for (const auto& [point, value] : pj.at("table").items()) {
            const int i = ps.predicate.over.index_of(point);
            const int e = m.omega.index_of(value.get<std::string>());
            if (i < 0)
                throw StructureError("predicate '" + name + "': unknown point '" + point + "'");
            if (e < 0)
                throw StructureError("predicate '" + name + "': unknown omega element '" +
                                     value.get<std::string>() + "'");
            ps.predicate.table[i] = e;
        }
        for (int i = 0; i < ps.predicate.over.size(); ++i)
            if (ps.predicate.table[i] < 0)
                throw StructureError("predicate '" + name + "': table misses point '" +
                                     ps.predicate.over.carrier[i] + "'");
        sig.predicates[name] = std::move(ps);
    }
    return sig;
}

}  // namespace

ModelBundle model_bundle_from_json(const json& j, const std::filesystem::path& base_dir) {
    ModelBundle bundle;
    Model& m = bundle.model;
    try {
        m.base_kind = base_kind_from_string(j.value("base_kind", "finset"));
        const json& omega = j.at("omega");
        if (omega.is_string()) {
            const std::string ref = omega.get<std::string>();
            const std::filesystem::path p = ref;
            m.omega = load_algebra(p.is_absolute() || base_dir.empty()
                                       ? ref
                                       : (base_dir / p).string());
        } else {
            m.omega = algebra_from_json(omega);
        }
        m.fibre_rule = fibre_rule_from_string(j.value("fibre_rule", "all"));
        if (j.contains("bounds")) {
            m.bounds.fibre = j.at("bounds").value("fibre", m.bounds.fibre);
            m.bounds.morphisms = j.at("bounds").value("morphisms", m.bounds.morphisms);
        }
        for (const auto& [name, obj] : j.value("objects", json::object()).items())
            m.objects[name] = object_from_json(obj);
    } catch (const json::exception& e) {
        throw StructureError(std::string("malformed model JSON: ") + e.what());
    }

    const LawReport rep = validate_model(m);
    if (!rep.ok())
        throw StructureError("model violates " + rep.first_failure()->law + ": " +
                             rep.first_failure()->witness.dump());

    if (j.contains("signature")) {
        bundle.signature = signature_from_json(m, j.at("signature"));
        bundle.has_signature = true;
        const LawReport sig_rep = logic::validate_signature(m, bundle.signature);
        if (!sig_rep.ok())
            throw StructureError("signature violates " + sig_rep.first_failure()->law + ": " +
                                 sig_rep.first_failure()->witness.dump());
    }
    return bundle;
}

ModelBundle load_model_file(const std::filesystem::path& path) {
    return model_bundle_from_json(read_json_file(path), path.parent_path());
}

json velement_to_json(const FiniteAlgebra& omega, const VElement& v) {
    json entries = json::array();
    for (const auto& [key, value] : v.entries)
        entries.push_back(json::array({velement_to_json(omega, key), omega.carrier[value]}));
    return json{{"rank", v.rank}, {"entries", entries}};
}

json category_to_json(const Model& m, const ToposCategory& cat) {
    json objects = json::array();
    for (const auto& per : cat.objects)
        objects.push_back(json{{"carrier", per.over.carrier},
                               {"eq", predicate_to_json(m, per.eq)}});
    json homs = json::array();
    for (std::size_t a = 0; a < cat.objects.size(); ++a)
        for (std::size_t b = 0; b < cat.objects.size(); ++b) {
            if (cat.homs[a][b].empty()) continue;
            json tables = json::array();
            for (const auto& t : cat.homs[a][b]) tables.push_back(t);
            homs.push_back(json{{"from", a}, {"to", b}, {"relations", std::move(tables)}});
        }
    return json{{"objects", objects},
                {"object-count", cat.objects.size()},
                {"hom-count", cat.total_homs()},
                {"homs", homs}};
}

}  // namespace qlwb
