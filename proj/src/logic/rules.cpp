// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#include "qlwb/logic/rules.hpp"

#include <algorithm>
#include <random>

namespace qlwb::logic {

namespace {

const char* kBaselineJson = R"JSON({
  "name": "baseline",
  "rules": [
    {"name": "id",
     "vars": [{"name": "x", "sort": "S"}],
     "metas": [{"name": "phi", "args": ["x"]}],
     "premises": [],
     "conclusion": "phi(x) |- phi(x)"},
    {"name": "cut",
     "vars": [{"name": "x", "sort": "S"}],
     "metas": [{"name": "phi", "args": ["x"]}, {"name": "psi", "args": ["x"]},
               {"name": "chi", "args": ["x"]}],
     "premises": ["phi(x) |- psi(x)", "psi(x) |- chi(x)"],
     "conclusion": "phi(x) |- chi(x)"},
    {"name": "and-left-1",
     "vars": [{"name": "x", "sort": "S"}],
     "metas": [{"name": "phi", "args": ["x"]}, {"name": "psi", "args": ["x"]},
               {"name": "chi", "args": ["x"]}],
     "premises": ["phi(x) |- chi(x)"],
     "conclusion": "phi(x) & psi(x) |- chi(x)"},
    {"name": "and-left-2",
     "vars": [{"name": "x", "sort": "S"}],
     "metas": [{"name": "phi", "args": ["x"]}, {"name": "psi", "args": ["x"]},
               {"name": "chi", "args": ["x"]}],
     "premises": ["psi(x) |- chi(x)"],
     "conclusion": "phi(x) & psi(x) |- chi(x)"},
    {"name": "and-right",
     "vars": [{"name": "x", "sort": "S"}],
     "metas": [{"name": "phi", "args": ["x"]}, {"name": "psi", "args": ["x"]},
               {"name": "chi", "args": ["x"]}],
     "premises": ["chi(x) |- phi(x)", "chi(x) |- psi(x)"],
     "conclusion": "chi(x) |- phi(x) & psi(x)"},
    {"name": "or-left",
     "vars": [{"name": "x", "sort": "S"}],
     "metas": [{"name": "phi", "args": ["x"]}, {"name": "psi", "args": ["x"]},
               {"name": "chi", "args": ["x"]}],
     "premises": ["phi(x) |- chi(x)", "psi(x) |- chi(x)"],
     "conclusion": "phi(x) | psi(x) |- chi(x)"},
    {"name": "or-right-1",
     "vars": [{"name": "x", "sort": "S"}],
     "metas": [{"name": "phi", "args": ["x"]}, {"name": "psi", "args": ["x"]},
               {"name": "chi", "args": ["x"]}],
     "premises": ["chi(x) |- phi(x)"],
     "conclusion": "chi(x) |- phi(x) | psi(x)"},
    {"name": "or-right-2",
     "vars": [{"name": "x", "sort": "S"}],
     "metas": [{"name": "phi", "args": ["x"]}, {"name": "psi", "args": ["x"]},
               {"name": "chi", "args": ["x"]}],
     "premises": ["chi(x) |- psi(x)"],
     "conclusion": "chi(x) |- phi(x) | psi(x)"},
    {"name": "top-right",
     "vars": [{"name": "x", "sort": "S"}],
     "metas": [{"name": "phi", "args": ["x"]}],
     "premises": [],
     "conclusion": "phi(x) |- top"},
    {"name": "bot-left",
     "vars": [{"name": "x", "sort": "S"}],
     "metas": [{"name": "phi", "args": ["x"]}],
     "premises": [],
     "conclusion": "bot |- phi(x)"},
    {"name": "ortho-contraposition",
     "vars": [{"name": "x", "sort": "S"}],
     "metas": [{"name": "phi", "args": ["x"]}, {"name": "psi", "args": ["x"]}],
     "premises": ["phi(x) |- psi(x)"],
     "conclusion": "psi(x)' |- phi(x)'"},
    {"name": "double-negation-intro",
     "vars": [{"name": "x", "sort": "S"}],
     "metas": [{"name": "phi", "args": ["x"]}],
     "premises": [],
     "conclusion": "phi(x) |- phi(x)''"},
    {"name": "double-negation-elim",
     "vars": [{"name": "x", "sort": "S"}],
     "metas": [{"name": "phi", "args": ["x"]}],
     "premises": [],
     "conclusion": "phi(x)'' |- phi(x)"},
    {"name": "orthomodular-schema",
     "vars": [{"name": "x", "sort": "S"}],
     "metas": [{"name": "phi", "args": ["x"]}, {"name": "psi", "args": ["x"]}],
     "premises": [],
     "conclusion": "phi(x) & (phi(x)' | (phi(x) & psi(x))) |- psi(x)"},
    {"name": "forall-right",
     "vars": [{"name": "x", "sort": "S"}, {"name": "y", "sort": "S"}],
     "metas": [{"name": "chi", "args": ["y"]}, {"name": "phi", "args": ["x", "y"]}],
     "side_conditions": [{"fresh": "x", "notin": "chi"}],
     "premises": ["chi(y) |- phi(x,y)"],
     "conclusion": "chi(y) |- forall x:S. phi(x,y)"},
    {"name": "forall-left",
     "vars": [{"name": "x", "sort": "S"}, {"name": "y", "sort": "S"}],
     "metas": [{"name": "phi", "args": ["x", "y"]},
               {"name": "t", "kind": "term", "args": ["y"], "sort": "S"}],
     "premises": [],
     "conclusion": "(forall x:S. phi(x,y)) |- phi(t(y),y)"},
    {"name": "exists-right",
     "vars": [{"name": "x", "sort": "S"}, {"name": "y", "sort": "S"}],
     "metas": [{"name": "phi", "args": ["x", "y"]},
               {"name": "t", "kind": "term", "args": ["y"], "sort": "S"}],
     "premises": [],
     "conclusion": "phi(t(y),y) |- exists x:S. phi(x,y)"},
    {"name": "exists-left",
     "vars": [{"name": "x", "sort": "S"}, {"name": "y", "sort": "S"}],
     "metas": [{"name": "chi", "args": ["y"]}, {"name": "phi", "args": ["x", "y"]}],
     "side_conditions": [{"fresh": "x", "notin": "chi"}],
     "premises": ["phi(x,y) |- chi(y)"],
     "conclusion": "(exists x:S. phi(x,y)) |- chi(y)"}
  ]
})JSON";

const char* kContestedJson = R"JSON({
  "name": "contested",
  "rules": [
    {"name": "distributivity",
     "vars": [{"name": "x", "sort": "S"}],
     "metas": [{"name": "phi", "args": ["x"]}, {"name": "psi", "args": ["x"]},
               {"name": "chi", "args": ["x"]}],
     "premises": [],
     "conclusion": "phi(x) & (psi(x) | chi(x)) |- (phi(x) & psi(x)) | (phi(x) & chi(x))"},
    {"name": "frobenius",
     "vars": [{"name": "x", "sort": "S"}, {"name": "y", "sort": "S"}],
     "metas": [{"name": "phi", "args": ["x", "y"]}, {"name": "psi", "args": ["y"]}],
     "side_conditions": [{"fresh": "x", "notin": "psi"}],
     "premises": [],
     "conclusion": "(exists x:S. phi(x,y)) & psi(y) |- exists x:S. (phi(x,y) & psi(y))"}
  ]
})JSON";

const SortExpr* var_sort(const Rule& rule, const std::string& name) {
    for (const auto& [n, s] : rule.vars)
        if (n == name) return &s;
    return nullptr;
}

void validate_rule(const Rule& rule) {
    for (const auto& meta : rule.metas)
        for (const auto& a : meta.args)
            if (!var_sort(rule, a))
                throw StructureError("rule '" + rule.name + "': meta '" + meta.name +
                                     "' mentions undeclared variable '" + a + "'");
}

}  // namespace

RuleSet ruleset_from_json(const json& j) {
    RuleSet rs;
    rs.name = j.value("name", "rules");
    for (const auto& rj : j.at("rules")) {
        Rule rule;
        rule.name = rj.at("name").get<std::string>();
        for (const auto& vj : rj.at("vars"))
            rule.vars.emplace_back(vj.at("name").get<std::string>(),
                                   parse_sort(vj.at("sort").get<std::string>()));
        for (const auto& mj : rj.at("metas")) {
            RuleMeta meta;
            meta.name = mj.at("name").get<std::string>();
            meta.kind = mj.value("kind", std::string("formula")) == "term" ? RuleMeta::Kind::term
                                                                           : RuleMeta::Kind::formula;
            for (const auto& a : mj.value("args", json::array()))
                meta.args.push_back(a.get<std::string>());
            if (meta.kind == RuleMeta::Kind::term)
                meta.sort = parse_sort(mj.at("sort").get<std::string>());
            rule.metas.push_back(std::move(meta));
        }
        for (const auto& pj : rj.value("premises", json::array()))
            rule.premises.push_back(parse_sequent(pj.get<std::string>()));
        rule.conclusion = parse_sequent(rj.at("conclusion").get<std::string>());

        // Freshness side conditions must agree with the argument lists.
        for (const auto& sc : rj.value("side_conditions", json::array())) {
            const std::string fresh = sc.at("fresh").get<std::string>();
            const std::string target = sc.at("notin").get<std::string>();
            bool found = false;
            for (const auto& meta : rule.metas)
                if (meta.name == target) {
                    found = true;
                    if (std::find(meta.args.begin(), meta.args.end(), fresh) != meta.args.end())
                        throw StructureError("rule '" + rule.name + "': side condition says '" +
                                             fresh + "' is fresh for '" + target +
                                             "' but it appears in the meta's arguments");
                }
            if (!found)
                throw StructureError("rule '" + rule.name + "': side condition names unknown meta '" +
                                     target + "'");
        }
        validate_rule(rule);
        rs.rules.push_back(std::move(rule));
    }
    return rs;
}

json ruleset_to_json(const RuleSet& rs) {
    json rules = json::array();
    for (const auto& r : rs.rules) {
        json vars = json::array();
        for (const auto& [n, s] : r.vars) vars.push_back({{"name", n}, {"sort", to_string(s)}});
        json metas = json::array();
        for (const auto& m : r.metas) {
            json mj{{"name", m.name}, {"args", m.args}};
            if (m.kind == RuleMeta::Kind::term) {
                mj["kind"] = "term";
                mj["sort"] = to_string(m.sort);
            }
            metas.push_back(std::move(mj));
        }
        json premises = json::array();
        for (const auto& p : r.premises) premises.push_back(to_string(p));
        rules.push_back({{"name", r.name},
                         {"vars", vars},
                         {"metas", metas},
                         {"premises", premises},
                         {"conclusion", to_string(r.conclusion)}});
    }
    return json{{"name", rs.name}, {"rules", rules}};
}

const RuleSet& baseline_rules() {
    static const RuleSet rs = ruleset_from_json(json::parse(kBaselineJson));
    return rs;
}

const RuleSet& contested_rules() {
    static const RuleSet rs = ruleset_from_json(json::parse(kContestedJson));
    return rs;
}

namespace {

struct MetaDomain {
    const RuleMeta* meta;
    BaseObject args_object;
    BaseObject result_object;              // term metas
    std::vector<Predicate> fibre;          // formula metas, exhaustive mode
    std::vector<BaseMorphism> morphisms;   // term metas, exhaustive mode
};

json instantiation_to_json(const Model& m, const Signature& sig,
                           const std::vector<MetaDomain>& domains) {
    json out = json::object();
    for (const auto& d : domains) {
        if (d.meta->kind == RuleMeta::Kind::formula) {
            out[d.meta->name] = predicate_to_json(m, sig.predicates.at(d.meta->name).predicate);
        } else {
            const BaseMorphism& f = sig.functions.at(d.meta->name).morphism;
            json t = json::object();
            for (int i = 0; i < f.dom.size(); ++i)
                t[f.dom.carrier[i]] = f.cod.carrier[f.table[i]];
            out[d.meta->name] = std::move(t);
        }
    }
    return out;
}

}  // namespace

LawReport check_rule_soundness(const Model& m, const Signature& sig, const Rule& rule,
                               const SoundnessOptions& opts) {
    LawReport rep;
    const std::string law = "rule-" + rule.name;

    // Resolve each metavariable's domain once.
    std::vector<MetaDomain> domains;
    for (const auto& meta : rule.metas) {
        MetaDomain d;
        d.meta = &meta;
        std::vector<BaseObject> arg_objs;
        for (const auto& a : meta.args) {
            const SortExpr* s = var_sort(rule, a);
            arg_objs.push_back(resolve_sort(sig, *s));
        }
        d.args_object = tuple_product(m.base_kind, arg_objs).object;
        if (meta.kind == RuleMeta::Kind::term) {
            d.result_object = resolve_sort(sig, meta.sort);
            d.morphisms = enumerate_morphisms(d.args_object, d.result_object, m.bounds.morphisms);
            if (d.morphisms.empty())
                throw CapacityError("rule '" + rule.name + "': no maps available for term meta '" +
                                    meta.name + "'");
        } else if (opts.exhaustive || m.fibre_rule != FibreRule::all_tables) {
            d.fibre = enumerate_fibre(m, d.args_object);
        }
        domains.push_back(std::move(d));
    }

    long long total = opts.samples;
    if (opts.exhaustive) {
        total = 1;
        for (const auto& d : domains) {
            const long long n = d.meta->kind == RuleMeta::Kind::formula
                                    ? static_cast<long long>(d.fibre.size())
                                    : static_cast<long long>(d.morphisms.size());
            total *= n;
            if (total > opts.exhaustive_bound)
                throw CapacityError("rule '" + rule.name + "': exhaustive instantiation exceeds " +
                                    std::to_string(opts.exhaustive_bound));
        }
    }

    std::mt19937_64 rng(opts.seed);
    std::vector<std::size_t> odometer(domains.size(), 0);

    std::int64_t checked = 0;
    for (long long sample = 0; sample < total; ++sample) {
        Signature inst = sig;
        for (std::size_t i = 0; i < domains.size(); ++i) {
            MetaDomain& d = domains[i];
            std::vector<SortExpr> arg_sorts;
            for (const auto& a : d.meta->args) arg_sorts.push_back(*var_sort(rule, a));
            if (d.meta->kind == RuleMeta::Kind::formula) {
                Predicate p{d.args_object, std::vector<int>(d.args_object.size(), 0)};
                if (opts.exhaustive) {
                    p = d.fibre[odometer[i]];
                } else if (!d.fibre.empty()) {
                    std::uniform_int_distribution<std::size_t> pick(0, d.fibre.size() - 1);
                    p = d.fibre[pick(rng)];
                } else {
                    std::uniform_int_distribution<int> pick(0, m.omega.size() - 1);
                    for (auto& e : p.table) e = pick(rng);
                }
                inst.predicates[d.meta->name] = PredicateSymbol{std::move(arg_sorts), std::move(p)};
            } else {
                BaseMorphism f;
                if (opts.exhaustive) {
                    f = d.morphisms[odometer[i]];
                } else {
                    std::uniform_int_distribution<std::size_t> pick(0, d.morphisms.size() - 1);
                    f = d.morphisms[pick(rng)];
                }
                inst.functions[d.meta->name] =
                    FunctionSymbol{std::move(arg_sorts), d.meta->sort, std::move(f)};
            }
        }
        if (opts.exhaustive) {
            int pos = static_cast<int>(domains.size()) - 1;
            while (pos >= 0) {
                const std::size_t n = domains[pos].meta->kind == RuleMeta::Kind::formula
                                          ? domains[pos].fibre.size()
                                          : domains[pos].morphisms.size();
                if (++odometer[pos] < n) break;
                odometer[pos] = 0;
                --pos;
            }
        }

        bool premises_hold = true;
        for (const auto& p : rule.premises)
            if (!check_sequent(m, inst, p).valid) {
                premises_hold = false;
                break;
            }
        if (!premises_hold) continue;
        ++checked;

        const SequentResult concl = check_sequent(m, inst, rule.conclusion);
        if (!concl.valid) {
            rep.failed(law, sample + 1,
                       json{{"instantiation", instantiation_to_json(m, inst, domains)},
                            {"conclusion", to_string(rule.conclusion)},
                            {"witness", concl.witness},
                            {"premises-checked", checked}});
            return rep;
        }
    }
    rep.passed(law, total);
    return rep;
}

LawReport check_ruleset_soundness(const Model& m, const Signature& sig, const RuleSet& rs,
                                  const SoundnessOptions& opts) {
    LawReport rep;
    SoundnessOptions per_rule = opts;
    for (std::size_t i = 0; i < rs.rules.size(); ++i) {
        per_rule.seed = opts.seed + i;
        rep.merge(check_rule_soundness(m, sig, rs.rules[i], per_rule));
    }
    return rep;
}

std::vector<PoolEntry> oml_pool() {
    return {{"boolean(1)", boolean_algebra(1), {1, 2}},
            {"boolean(2)", boolean_algebra(2), {1, 2}},
            {"mo2", mo2(), {1, 2}}};
}

std::vector<PoolEntry> full_pool() {
    auto pool = oml_pool();
    pool.push_back({"o6", o6(), {1, 2}});
    return pool;
}

namespace {

void collect_symbols_term(const Term& t, std::map<std::string, int>& fns) {
    switch (t.kind) {
        case Term::Kind::variable:
            return;
        case Term::Kind::apply: {
            auto [it, fresh] = fns.emplace(t.name, static_cast<int>(t.args.size()));
            if (!fresh && it->second != static_cast<int>(t.args.size()))
                throw TypeCheckError("function symbol '" + t.name + "' used at two arities");
            for (const auto& a : t.args) collect_symbols_term(a, fns);
            return;
        }
        default:
            throw TypeCheckError("pair/fst/snd are not supported in countermodel search");
    }
}

void collect_symbols(const Formula& f, std::map<std::string, int>& preds,
                     std::map<std::string, int>& fns) {
    switch (f.kind) {
        case Formula::Kind::pred: {
            auto [it, fresh] = preds.emplace(f.name, static_cast<int>(f.terms.size()));
            if (!fresh && it->second != static_cast<int>(f.terms.size()))
                throw TypeCheckError("predicate symbol '" + f.name + "' used at two arities");
            for (const auto& t : f.terms) collect_symbols_term(t, fns);
            return;
        }
        case Formula::Kind::equal:
            for (const auto& t : f.terms) collect_symbols_term(t, fns);
            return;
        default:
            for (const auto& k : f.kids) collect_symbols(k, preds, fns);
    }
}

}  // namespace

std::optional<Countermodel> find_countermodel(const Sequent& s,
                                              const std::vector<PoolEntry>& pool,
                                              long long bound) {
    std::map<std::string, int> preds, fns;
    collect_symbols(s.lhs, preds, fns);
    collect_symbols(s.rhs, preds, fns);

    for (const auto& entry : pool) {
        for (int size : entry.sort_sizes) {
            Model m;
            m.base_kind = BaseKind::finset;
            m.omega = entry.omega;

            Signature sig;
            const BaseObject sort_obj = canonical_finset(size, "s");
            sig.sorts["S"] = sort_obj;

            struct Slot {
                std::string name;
                bool is_pred;
                std::vector<Predicate> fibre;
                std::vector<BaseMorphism> morphisms;
                std::size_t count() const {
                    return is_pred ? fibre.size() : morphisms.size();
                }
            };
            std::vector<Slot> slots;
            long long total = 1;
            const SortExpr sort_s = named_sort("S");
            for (const auto& [name, arity] : preds) {
                Slot slot{name, true, {}, {}};
                const BaseObject over =
                    tuple_product(m.base_kind, std::vector<BaseObject>(arity, sort_obj)).object;
                slot.fibre = enumerate_fibre(m, over);
                total *= static_cast<long long>(slot.fibre.size());
                sig.predicates[name] = PredicateSymbol{
                    std::vector<SortExpr>(arity, sort_s), slot.fibre.front()};
                slots.push_back(std::move(slot));
                if (total > bound)
                    throw CapacityError("countermodel search exceeds bound " +
                                        std::to_string(bound));
            }
            for (const auto& [name, arity] : fns) {
                Slot slot{name, false, {}, {}};
                const BaseObject dom =
                    tuple_product(m.base_kind, std::vector<BaseObject>(arity, sort_obj)).object;
                slot.morphisms = enumerate_morphisms(dom, sort_obj, m.bounds.morphisms);
                if (slot.morphisms.empty()) { total = 0; }
                else total *= static_cast<long long>(slot.morphisms.size());
                sig.functions[name] = FunctionSymbol{
                    std::vector<SortExpr>(arity, sort_s), sort_s,
                    slot.morphisms.empty() ? BaseMorphism{} : slot.morphisms.front()};
                slots.push_back(std::move(slot));
                if (total > bound)
                    throw CapacityError("countermodel search exceeds bound " +
                                        std::to_string(bound));
            }

            std::vector<std::size_t> odometer(slots.size(), 0);
            for (long long i = 0; i < total; ++i) {
                for (std::size_t k = 0; k < slots.size(); ++k) {
                    if (slots[k].is_pred)
                        sig.predicates[slots[k].name].predicate = slots[k].fibre[odometer[k]];
                    else
                        sig.functions[slots[k].name].morphism = slots[k].morphisms[odometer[k]];
                }
                const SequentResult res = check_sequent(m, sig, s);
                if (!res.valid) {
                    json interp = json::object();
                    for (const auto& slot : slots) {
                        if (slot.is_pred)
                            interp[slot.name] =
                                predicate_to_json(m, sig.predicates[slot.name].predicate);
                        else {
                            const BaseMorphism& f = sig.functions[slot.name].morphism;
                            json t = json::object();
                            for (int p = 0; p < f.dom.size(); ++p)
                                t[f.dom.carrier[p]] = f.cod.carrier[f.table[p]];
                            interp[slot.name] = std::move(t);
                        }
                    }
                    return Countermodel{entry.name, size, std::move(interp), res.witness};
                }
                int pos = static_cast<int>(slots.size()) - 1;
                while (pos >= 0) {
                    if (++odometer[pos] < slots[pos].count()) break;
                    odometer[pos] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }
    }
    return std::nullopt;
}

}  // namespace qlwb::logic
