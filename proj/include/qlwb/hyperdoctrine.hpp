// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QLWB_HYPERDOCTRINE_HPP
#define QLWB_HYPERDOCTRINE_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlwb/algebra.hpp"
#include "qlwb/base.hpp"
#include "qlwb/report.hpp"

namespace qlwb {

/// Which tables X -> Ω belong to the fibre over X. Structured rules
/// require a two-element omega and the matching base kind; membership is
/// decided by the true-set (preimage of top).
enum class FibreRule { all_tables, open_tables, convex_tables };

std::string to_string(FibreRule rule);
FibreRule fibre_rule_from_string(const std::string& name);

struct Bounds {
    long long fibre = 10000;
    long long morphisms = 10000;
};

/// A predicate functor Hom(-, Ω) over one finite base category: the value
/// algebra, a fibre membership rule, enumeration bounds and any named
/// objects loaded alongside. Immutable after construction.
struct Model {
    BaseKind base_kind = BaseKind::finset;
    FiniteAlgebra omega;
    FibreRule fibre_rule = FibreRule::all_tables;
    Bounds bounds;
    std::map<std::string, BaseObject> objects;

    const BaseObject& object(const std::string& name) const;
};

/// Checks the model invariants: omega passes the laws of its class tag,
/// the fibre rule matches the base kind, and on the named objects the
/// fibre is closed under the pointwise lattice operations (sampled).
LawReport validate_model(const Model& m);

/// An element of the fibre over `over`: a total table into omega indices.
struct Predicate {
    BaseObject over;
    std::vector<int> table;

    bool operator==(const Predicate&) const = default;
};

json predicate_to_json(const Model& m, const Predicate& v);

bool in_fibre(const Model& m, const Predicate& v);

/// Pointwise fibre order: u <= v iff u(x) <= v(x) for every point.
bool pred_leq(const Model& m, const Predicate& u, const Predicate& v);

Predicate pred_const(const Model& m, const BaseObject& x, int value);
Predicate pred_top(const Model& m, const BaseObject& x);
Predicate pred_bot(const Model& m, const BaseObject& x);

/// Pointwise operations. Results are checked against the fibre rule;
/// a violation throws LiftingError carrying the witness true-set.
Predicate pred_meet(const Model& m, const Predicate& u, const Predicate& v);
Predicate pred_join(const Model& m, const Predicate& u, const Predicate& v);
Predicate pred_ortho(const Model& m, const Predicate& u);
Predicate pred_impl(const Model& m, const Predicate& u, const Predicate& v);

/// Streams every fibre member over x in lexicographic table order.
/// Throws CapacityError when the enumeration would exceed bounds.fibre.
void for_each_fibre(const Model& m, const BaseObject& x,
                    const std::function<void(const Predicate&)>& fn);

std::vector<Predicate> enumerate_fibre(const Model& m, const BaseObject& x);

/// Substitution: v ∘ f.
Predicate pullback(const Model& m, const BaseMorphism& f, const Predicate& v);

/// Right adjoint of pullback along f, computed pointwise as the meet over
/// each preimage; lifts whenever the result satisfies the fibre rule.
Predicate forall_along(const Model& m, const BaseMorphism& f, const Predicate& v);

/// Left adjoint of pullback along f (pointwise join over preimages).
Predicate exists_along(const Model& m, const BaseMorphism& f, const Predicate& v);

/// Left adjoint of pullback along the diagonal of v's object:
/// (x, x) ↦ v(x), elsewhere bottom. Result lives over product(X, X).
Predicate equality_along(const Model& m, const Predicate& v);

struct Comprehension {
    BaseObject object;       // sub-object on {x | v(x) = top}
    BaseMorphism inclusion;  // into v's object
};

Comprehension comprehension(const Model& m, const Predicate& v);

enum class Adjoint { forall, exists, equality };

std::string to_string(Adjoint which);

/// Exhaustively verifies the Galois condition of the chosen adjoint over
/// all fibre pairs: e.g. for exists, ∃v <= w iff v <= π*(w).
LawReport check_adjunction(const Model& m, Adjoint which, const BaseObject& x,
                           const BaseObject& y);

/// For every arrow f : Z -> Y and fibre member v over X×Y, checks
/// f*(Q_π v) = Q_π'((X×f)* v) where π, π' are the projections to Y and Z.
LawReport check_beck_chevalley(const Model& m, Adjoint which, const BaseObject& x,
                               const BaseObject& y, const BaseObject& z);

/// First pair (v over X×Y, w over Y) with ∃π(v ∧ π*w) != ∃π(v) ∧ w,
/// if any. Distributive fibres have none; orthomodular ones typically do.
std::optional<std::pair<Predicate, Predicate>> check_frobenius(const Model& m,
                                                               const BaseObject& x,
                                                               const BaseObject& y);

/// Arrows (X,u) -> (Y,v) of the total category: morphisms f with
/// u <= f*(v).
std::vector<BaseMorphism> grothendieck_hom(const Model& m, const Predicate& u,
                                           const Predicate& v);

/// Verifies the comprehension adjunction for (X, v): arrows from the
/// truth object over Y into (X, v) correspond exactly to morphisms
/// Y -> {x | v(x) = top}, naturally in Y.
LawReport check_comprehension_adjunction(const Model& m, const BaseObject& y,
                                         const Predicate& v);

/// Verifies that the fibre over X is Hom(X, Ω̂) for the carrier-of-omega
/// finset Ω̂, with pullback acting by precomposition (finset models only).
LawReport check_generic_object(const Model& m, const BaseObject& x);

}  // namespace qlwb

#endif
