// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QLWB_ALGEBRA_HPP
#define QLWB_ALGEBRA_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qlwb/report.hpp"

namespace qlwb {

enum class ClassTag {
    poset,
    bounded_lattice,
    distributive,
    heyting,
    frame,
    boolean,
    ortholattice,
    orthomodular,
};

std::string to_string(ClassTag tag);
ClassTag class_tag_from_string(const std::string& name);

/// A finite bounded poset with operation tables. Elements are canonical
/// indices into `carrier`; all tables are index tables. `ortho` and `impl`
/// are optional (empty when absent).
struct FiniteAlgebra {
    std::vector<std::string> carrier;
    std::vector<std::vector<bool>> leq;
    std::vector<std::vector<int>> meet;
    std::vector<std::vector<int>> join;
    std::vector<int> ortho;
    std::vector<std::vector<int>> impl;
    int bot = 0;
    int top = 0;
    ClassTag class_tag = ClassTag::bounded_lattice;

    int size() const { return static_cast<int>(carrier.size()); }
    bool has_ortho() const { return !ortho.empty(); }
    bool has_impl() const { return !impl.empty(); }

    bool le(int x, int y) const { return leq[x][y]; }
    int meet_of(int x, int y) const { return meet[x][y]; }
    int join_of(int x, int y) const { return join[x][y]; }
    int ortho_of(int x) const { return ortho[x]; }
    int impl_of(int x, int y) const { return impl[x][y]; }

    /// Index of a carrier label, -1 if absent.
    int index_of(const std::string& label) const;
};

/// Throws StructureError naming the offending table if any table is not
/// sized to the carrier or holds an out-of-range index.
void validate_structure(const FiniteAlgebra& a);

/// Checks every law of `tag` against the tables, most primitive first
/// (order laws, then lattice laws, then bounds, then class laws). Each
/// failing law carries its first violating tuple in carrier order.
LawReport check_laws(const FiniteAlgebra& a, ClassTag tag);

/// The six-element orthomodular lattice with two incomparable
/// complemented pairs {0, a, a', b, b', 1}.
FiniteAlgebra mo2();

/// The six-element "benzene" ortholattice 0 < a < b < 1, 0 < b' < a' < 1.
/// Passes all ortholattice laws but not the orthomodular law.
FiniteAlgebra o6();

/// Powerset of k atoms. k = 1 gives the two-element chain {0, 1}.
FiniteAlgebra boolean_algebra(int k, int max_atoms = 5);

inline FiniteAlgebra two_chain() { return boolean_algebra(1); }

enum class AggregateKind { meet, join };

/// Greatest lower / least upper bound of a set of elements (empty meet is
/// top, empty join is bot). The result is re-verified against `leq` by
/// enumeration; throws IncompleteAlgebraError when no such bound exists.
int aggregate(const FiniteAlgebra& a, AggregateKind kind, const std::vector<int>& elems);

/// First triple (x, y, z) in carrier order with
/// x ∧ (y ∨ z) != (x ∧ y) ∨ (x ∧ z), if any.
std::optional<std::array<int, 3>> find_distributivity_counterexample(const FiniteAlgebra& a);

/// Searches for a bijection carrying leq, ortho, meet and join of `a`
/// onto those of `b`. Carrier sizes are capped at 8 (factorial search).
std::optional<std::vector<int>> find_ortho_isomorphism(const FiniteAlgebra& a,
                                                       const FiniteAlgebra& b);

}  // namespace qlwb

#endif
