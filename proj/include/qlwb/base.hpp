// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QLWB_BASE_HPP
#define QLWB_BASE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qlwb/report.hpp"

namespace qlwb {

enum class BaseKind { finset, fintop, finconv };

std::string to_string(BaseKind kind);
BaseKind base_kind_from_string(const std::string& name);

/// A finite carrier with optional structure: a family of open subsets
/// (fintop) or convex subsets (finconv), each subset a bitmask over
/// carrier indices. Structured carriers are capped at 64 points.
struct BaseObject {
    BaseKind kind = BaseKind::finset;
    std::vector<std::string> carrier;
    std::vector<std::uint64_t> structure;  // sorted, duplicate-free; empty for finset

    int size() const { return static_cast<int>(carrier.size()); }
    std::uint64_t full_mask() const {
        return size() == 64 ? ~0ull : (1ull << size()) - 1;
    }
    bool has_set(std::uint64_t mask) const;
    int index_of(const std::string& label) const;

    bool operator==(const BaseObject&) const = default;
};

/// A total function between carriers, structure-preserving when valid.
struct BaseMorphism {
    BaseObject dom;
    BaseObject cod;
    std::vector<int> table;

    int apply(int i) const { return table[i]; }
    bool operator==(const BaseMorphism&) const = default;
};

BaseObject make_finset(std::vector<std::string> labels);
BaseObject make_fintop(std::vector<std::string> labels, std::vector<std::uint64_t> opens);
BaseObject make_finconv(std::vector<std::string> labels, std::vector<std::uint64_t> convexes);

/// Canonical finset {prefix1, ..., prefixN}.
BaseObject canonical_finset(int n, const std::string& prefix = "x");

std::string subset_label(const BaseObject& x, std::uint64_t mask);

/// Checks the closure laws of the object's kind (opens closed under union
/// and intersection and containing ∅ and the carrier; convex families
/// closed under intersection). Malformed data throws StructureError.
LawReport validate_object(const BaseObject& x);

/// Checks totality plus preimage preservation of opens / convex sets.
LawReport validate_morphism(const BaseMorphism& f);

struct Product {
    BaseObject object;
    BaseMorphism proj1;
    BaseMorphism proj2;
};

struct TupleProduct {
    BaseObject object;
    std::vector<BaseMorphism> projections;
};

/// Product of same-kind objects: carrier = tuples (first factor most
/// significant in the index layout). Opens are generated from open boxes
/// by unions; convex sets are exactly the convex boxes. The empty tuple
/// product is the terminal object.
TupleProduct tuple_product(BaseKind kind, const std::vector<BaseObject>& factors);

Product product(const BaseObject& x, const BaseObject& y);

BaseObject terminal(BaseKind kind);

BaseMorphism identity(const BaseObject& x);

/// Diagrammatic composition: f first, then g.
BaseMorphism compose(const BaseMorphism& f, const BaseMorphism& g);

/// x ↦ (x, x) into product(x, x).
BaseMorphism diagonal(const BaseObject& x);

/// Tupling ⟨f1, ..., fk⟩ of morphisms with a common domain into the tuple
/// product of their codomains.
BaseMorphism tuple_pairing(BaseKind kind, const std::vector<BaseMorphism>& components);

BaseMorphism pairing(const BaseMorphism& f, const BaseMorphism& g);

/// All function tables X -> Y as a finset (finset arguments only).
BaseObject exponential(const BaseObject& x, const BaseObject& y);

/// All structure-preserving total maps X -> Y, in lexicographic table
/// order. Throws CapacityError when |Y|^|X| exceeds the bound.
std::vector<BaseMorphism> enumerate_morphisms(const BaseObject& x, const BaseObject& y,
                                              long long bound = 10000);

}  // namespace qlwb

#endif
