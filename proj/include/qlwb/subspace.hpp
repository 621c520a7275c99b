// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QLWB_SUBSPACE_HPP
#define QLWB_SUBSPACE_HPP

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qlwb/algebra.hpp"

namespace qlwb {

using Rational = boost::multiprecision::cpp_rational;

/// A subspace of Q^d as a canonical matrix: reduced row echelon form,
/// no zero rows. The zero subspace is the empty matrix. Canonical form
/// makes subspace equality syntactic.
using SubspaceMatrix = std::vector<std::vector<Rational>>;

struct SubspaceLatticeSpec {
    int dim = 1;
    std::vector<SubspaceMatrix> generators;  // each: list of basis vectors
    int size_cap = 50;
};

Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& r);

/// Reduced row echelon form with zero rows dropped.
SubspaceMatrix rref(SubspaceMatrix m);

SubspaceMatrix subspace_sum(const SubspaceMatrix& a, const SubspaceMatrix& b);
SubspaceMatrix subspace_intersection(const SubspaceMatrix& a, const SubspaceMatrix& b, int dim);

/// Orthogonal complement w.r.t. the standard inner product on Q^d.
SubspaceMatrix subspace_complement(const SubspaceMatrix& a, int dim);

bool subspace_leq(const SubspaceMatrix& a, const SubspaceMatrix& b);

std::string subspace_label(const SubspaceMatrix& m);

/// Smallest family containing the generators, {0} and Q^d, closed under
/// intersection, sum and orthogonal complement, as a FiniteAlgebra ordered
/// by inclusion (class orthomodular). Throws CapacityError (reporting the
/// partial size) when the closure exceeds spec.size_cap.
FiniteAlgebra subspace_lattice(const SubspaceLatticeSpec& spec);

}  // namespace qlwb

#endif
