// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QLWB_LOGIC_RULES_HPP
#define QLWB_LOGIC_RULES_HPP

#include <optional>

#include "qlwb/logic/interpret.hpp"
#include "qlwb/logic/parser.hpp"

namespace qlwb::logic {

/// A schematic metavariable: a formula meta stands for an arbitrary
/// predicate over the product of its argument sorts, a term meta for an
/// arbitrary map into its result sort. Freshness side conditions are
/// expressed by omitting a rule variable from the argument list.
struct RuleMeta {
    enum class Kind { formula, term };
    std::string name;
    Kind kind = Kind::formula;
    std::vector<std::string> args;  // rule variable names
    SortExpr sort;                  // result sort (term metas)
};

struct Rule {
    std::string name;
    std::vector<std::pair<std::string, SortExpr>> vars;
    std::vector<RuleMeta> metas;
    std::vector<Sequent> premises;
    Sequent conclusion;
};

struct RuleSet {
    std::string name;
    std::vector<Rule> rules;
};

/// Inference rules with single-formula contexts: identity, cut, lattice
/// rules, ortho rules, the orthomodular schema, and the four quantifier
/// rules with eigenvariable side conditions.
const RuleSet& baseline_rules();

/// Schemas that hold classically but are refutable in orthomodular
/// models: distributivity and Frobenius reciprocity.
const RuleSet& contested_rules();

RuleSet ruleset_from_json(const json& j);
json ruleset_to_json(const RuleSet& rs);

struct SoundnessOptions {
    long long samples = 1000;
    std::uint64_t seed = 0;
    bool exhaustive = false;
    long long exhaustive_bound = 1000000;
};

/// Checks one rule: for each instantiation of its metavariables (seeded
/// random tables, or every table in exhaustive mode), all premises valid
/// implies the conclusion valid. Reports the first violating
/// instantiation in full.
LawReport check_rule_soundness(const Model& m, const Signature& sig, const Rule& rule,
                               const SoundnessOptions& opts);

LawReport check_ruleset_soundness(const Model& m, const Signature& sig, const RuleSet& rs,
                                  const SoundnessOptions& opts);

struct PoolEntry {
    std::string name;
    FiniteAlgebra omega;
    std::vector<int> sort_sizes;
};

std::vector<PoolEntry> oml_pool();   // boolean(1), boolean(2), mo2
std::vector<PoolEntry> full_pool();  // oml_pool + o6

struct Countermodel {
    std::string pool_entry;
    int sort_size = 0;
    json interpretation;
    json witness;
};

/// Searches the pool for a model and symbol interpretation invalidating
/// the sequent: predicate symbols range over the fibre, function symbols
/// over all maps, variables over a single sort S of each listed size.
std::optional<Countermodel> find_countermodel(const Sequent& s,
                                              const std::vector<PoolEntry>& pool,
                                              long long bound = 1000000);

}  // namespace qlwb::logic

#endif
