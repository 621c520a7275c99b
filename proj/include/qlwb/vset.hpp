// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QLWB_VSET_HPP
#define QLWB_VSET_HPP

#include <compare>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qlwb/tripos.hpp"

namespace qlwb {

using BigInt = boost::multiprecision::cpp_int;

/// A set with omega-valued equality.
struct QSet {
    std::vector<std::string> carrier;
    std::vector<int> eq;  // row-major carrier x carrier -> omega index

    int size() const { return static_cast<int>(carrier.size()); }
};

QSet per_to_qset(const Per& p);

/// A rank-bounded element of the omega-valued universe: a finite map from
/// lower-rank elements to omega. Structural identity; entries sorted by key.
struct VElement {
    int rank = 0;
    std::vector<std::pair<VElement, int>> entries;

    bool operator==(const VElement& other) const;
    std::strong_ordering operator<=>(const VElement& other) const;
};

/// Builds an element from entries (keys deduplicated and sorted); the rank
/// is one more than the largest key rank, zero for the empty map.
VElement make_velement(std::vector<std::pair<VElement, int>> entries);

/// The canonical numeral: î maps ĵ to top for every j < i; rank i.
VElement numeral(int i, int omega_top);

/// Encodes the carrier diagonal: the i-th element becomes the entry
/// î ↦ eq(x_i, x_i).
VElement qset_to_v(const FiniteAlgebra& omega, const QSet& q);

/// Cumulative stages: V_0 = {empty map}, V_{r+1} = all maps from subsets
/// of V_r into omega. stages[r] is sorted structurally.
struct VUniverse {
    std::vector<std::vector<VElement>> stages;

    std::vector<long long> counts() const;
};

VUniverse v_build(const FiniteAlgebra& omega, int max_rank, long long cap = 100000);

/// Closed-form stage sizes: |V_0| = 1, |V_{r+1}| = (1 + |omega|)^|V_r|.
std::vector<BigInt> v_count(const FiniteAlgebra& omega, int max_rank);

}  // namespace qlwb

#endif
