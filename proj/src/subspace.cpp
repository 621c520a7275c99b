// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#include "qlwb/subspace.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qlwb {

using boost::multiprecision::cpp_int;

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(cpp_int(text));
        const cpp_int num(text.substr(0, slash));
        const cpp_int den(text.substr(slash + 1));
        if (den == 0) throw StructureError("rational with zero denominator: '" + text + "'");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw StructureError("cannot parse rational: '" + text + "'");
    }
}

std::string rational_to_string(const Rational& r) {
    const cpp_int num = numerator(r), den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

SubspaceMatrix rref(SubspaceMatrix m) {
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return m;
    const int cols = static_cast<int>(m[0].size());
    int lead = 0;
    for (int r = 0; r < rows && lead < cols; ++r) {
        int pivot = -1;
        while (lead < cols) {
            for (int i = r; i < rows; ++i)
                if (m[i][lead] != 0) {
                    pivot = i;
                    break;
                }
            if (pivot >= 0) break;
            ++lead;
        }
        if (pivot < 0) break;
        std::swap(m[r], m[pivot]);
        const Rational inv = m[r][lead];
        for (int c = 0; c < cols; ++c) m[r][c] /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][lead] == 0) continue;
            const Rational factor = m[i][lead];
            for (int c = 0; c < cols; ++c) m[i][c] -= factor * m[r][c];
        }
        ++lead;
    }
    while (!m.empty()) {
        const bool zero = std::all_of(m.back().begin(), m.back().end(),
                                      [](const Rational& x) { return x == 0; });
        if (!zero) break;
        m.pop_back();
    }
    return m;
}

SubspaceMatrix subspace_sum(const SubspaceMatrix& a, const SubspaceMatrix& b) {
    SubspaceMatrix stacked = a;
    stacked.insert(stacked.end(), b.begin(), b.end());
    return rref(std::move(stacked));
}

SubspaceMatrix subspace_complement(const SubspaceMatrix& a, int dim) {
    // Nullspace of the basis matrix: pivots of the RREF determine bound
    // coordinates, one basis vector per free coordinate.
    const SubspaceMatrix r = rref(a);
    std::vector<int> pivot_of_col(dim, -1);
    for (int i = 0; i < static_cast<int>(r.size()); ++i)
        for (int c = 0; c < dim; ++c)
            if (r[i][c] != 0) {
                pivot_of_col[c] = i;
                break;
            }
    SubspaceMatrix basis;
    for (int f = 0; f < dim; ++f) {
        if (pivot_of_col[f] >= 0) continue;
        std::vector<Rational> v(dim, Rational(0));
        v[f] = 1;
        for (int c = 0; c < dim; ++c)
            if (pivot_of_col[c] >= 0) v[c] = -r[pivot_of_col[c]][f];
        basis.push_back(std::move(v));
    }
    return rref(std::move(basis));
}

SubspaceMatrix subspace_intersection(const SubspaceMatrix& a, const SubspaceMatrix& b, int dim) {
    return subspace_complement(
        subspace_sum(subspace_complement(a, dim), subspace_complement(b, dim)), dim);
}

bool subspace_leq(const SubspaceMatrix& a, const SubspaceMatrix& b) {
    return subspace_sum(a, b) == b;
}

std::string subspace_label(const SubspaceMatrix& m) {
    if (m.empty()) return "0";
    std::string out = "span{";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) out += ",";
        out += "(";
        for (std::size_t c = 0; c < m[i].size(); ++c) {
            if (c) out += ",";
            out += rational_to_string(m[i][c]);
        }
        out += ")";
    }
    out += "}";
    return out;
}

FiniteAlgebra subspace_lattice(const SubspaceLatticeSpec& spec) {
    const int d = spec.dim;
    if (d < 1) throw StructureError("subspace lattice dimension must be positive");
    if (spec.size_cap < 2) throw StructureError("size_cap must be at least 2");

    std::set<SubspaceMatrix> elements;
    elements.insert(SubspaceMatrix{});  // zero subspace
    SubspaceMatrix full;
    for (int i = 0; i < d; ++i) {
        std::vector<Rational> row(d, Rational(0));
        row[i] = 1;
        full.push_back(std::move(row));
    }
    elements.insert(full);

    for (const auto& gen : spec.generators) {
        for (const auto& v : gen)
            if (static_cast<int>(v.size()) != d)
                throw StructureError("generator vector has size " + std::to_string(v.size()) +
                                     ", expected " + std::to_string(d));
        const SubspaceMatrix canon = rref(gen);
        if (canon.size() != gen.size())
            throw StructureError("generator vectors are linearly dependent: " +
                                 subspace_label(rref(gen)));
        elements.insert(canon);
    }

    // Fixpoint closure under complement, sum and intersection.
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<SubspaceMatrix> snapshot(elements.begin(), elements.end());
        for (const auto& u : snapshot)
            changed |= elements.insert(subspace_complement(u, d)).second;
        for (const auto& u : snapshot)
            for (const auto& v : snapshot) {
                changed |= elements.insert(subspace_sum(u, v)).second;
                changed |= elements.insert(subspace_intersection(u, v, d)).second;
            }
        if (static_cast<int>(elements.size()) > spec.size_cap)
            throw CapacityError("subspace closure exceeds size_cap " +
                                std::to_string(spec.size_cap) + " (partial size " +
                                std::to_string(elements.size()) + ")");
    }

    std::vector<SubspaceMatrix> carrier(elements.begin(), elements.end());
    std::sort(carrier.begin(), carrier.end(), [](const SubspaceMatrix& x, const SubspaceMatrix& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    std::map<SubspaceMatrix, int> index;
    for (int i = 0; i < static_cast<int>(carrier.size()); ++i) index[carrier[i]] = i;

    const int n = static_cast<int>(carrier.size());
    FiniteAlgebra a;
    a.carrier.reserve(n);
    for (const auto& m : carrier) a.carrier.push_back(subspace_label(m));
    a.leq.assign(n, std::vector<bool>(n, false));
    a.meet.assign(n, std::vector<int>(n, 0));
    a.join.assign(n, std::vector<int>(n, 0));
    a.ortho.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        a.ortho[i] = index.at(subspace_complement(carrier[i], d));
        for (int j = 0; j < n; ++j) {
            a.leq[i][j] = subspace_leq(carrier[i], carrier[j]);
            a.meet[i][j] = index.at(subspace_intersection(carrier[i], carrier[j], d));
            a.join[i][j] = index.at(subspace_sum(carrier[i], carrier[j]));
        }
    }
    a.bot = index.at(SubspaceMatrix{});
    a.top = index.at(full);
    a.class_tag = ClassTag::orthomodular;
    return a;
}

}  // namespace qlwb
