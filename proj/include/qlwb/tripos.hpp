// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QLWB_TRIPOS_HPP
#define QLWB_TRIPOS_HPP

#include "qlwb/hyperdoctrine.hpp"

namespace qlwb {

/// A partial equivalence relation in the internal logic: an omega-valued
/// relation on X that is symmetric and transitive (not necessarily
/// reflexive anywhere).
struct Per {
    BaseObject over;
    Predicate eq;  // over product(over, over)

    bool operator==(const Per&) const = default;
};

Per make_per(const Model& m, const BaseObject& x, std::vector<int> eq_table);

/// The identity PER on x: equality of v = top restricted to the diagonal.
Per identity_per(const Model& m, const BaseObject& x);

LawReport check_per(const Model& m, const Per& p);

/// A candidate morphism of PERs: a relation that is strict, congruent,
/// single-valued and total w.r.t. the two partial equalities.
struct FunctionalRelation {
    Per dom;
    Per cod;
    Predicate rel;  // over product(dom.over, cod.over)

    bool operator==(const FunctionalRelation&) const = default;
};

LawReport check_functional_relation(const Model& m, const FunctionalRelation& f);

FunctionalRelation identity_relation(const Model& m, const Per& p);

/// Relational composition in the internal logic:
/// (f ; g)(x, z) = ⋁_y f(x, y) ∧ g(y, z).
FunctionalRelation compose_relations(const Model& m, const FunctionalRelation& f,
                                     const FunctionalRelation& g);

/// Morphism identification of the PER category: mutual fibre order.
bool relations_equivalent(const Model& m, const FunctionalRelation& f,
                          const FunctionalRelation& g);

/// All PERs over x, eq tables in lexicographic order.
std::vector<Per> enumerate_pers(const Model& m, const BaseObject& x);

/// All functional relations from a to b, rel tables in lexicographic order.
std::vector<std::vector<int>> enumerate_functional_relations(const Model& m, const Per& a,
                                                             const Per& b);

/// The PER category over the model: objects are all PERs over canonical
/// finsets of size 0..max_carrier (capped), homs are the functional
/// relation tables per ordered object pair.
struct ToposCategory {
    std::vector<Per> objects;
    std::vector<std::vector<std::vector<std::vector<int>>>> homs;  // [a][b] -> rel tables

    long long total_homs() const;
};

ToposCategory build_topos(const Model& m, int max_carrier, long long object_cap);

/// Unit and associativity of relational composition, identity membership
/// and closure of composition, exhaustively over the built category.
LawReport check_category_laws(const Model& m, const ToposCategory& cat);

}  // namespace qlwb

#endif
