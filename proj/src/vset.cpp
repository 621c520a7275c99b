// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#include "qlwb/vset.hpp"

#include <algorithm>

namespace qlwb {

QSet per_to_qset(const Per& p) {
    return QSet{p.over.carrier, p.eq.table};
}

bool VElement::operator==(const VElement& other) const {
    return rank == other.rank && entries == other.entries;
}

std::strong_ordering VElement::operator<=>(const VElement& other) const {
    if (auto c = rank <=> other.rank; c != 0) return c;
    if (auto c = entries.size() <=> other.entries.size(); c != 0) return c;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (auto c = entries[i].first <=> other.entries[i].first; c != 0) return c;
        if (auto c = entries[i].second <=> other.entries[i].second; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

VElement make_velement(std::vector<std::pair<VElement, int>> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries.size(); ++i)
        if (entries[i].first == entries[i - 1].first)
            throw StructureError("duplicate key in omega-valued set element");
    VElement v;
    v.rank = 0;
    for (const auto& [key, value] : entries) v.rank = std::max(v.rank, key.rank + 1);
    v.entries = std::move(entries);
    return v;
}

VElement numeral(int i, int omega_top) {
    VElement v;
    for (int j = 0; j < i; ++j) v.entries.emplace_back(numeral(j, omega_top), omega_top);
    v.rank = i;
    return v;
}

VElement qset_to_v(const FiniteAlgebra& omega, const QSet& q) {
    std::vector<std::pair<VElement, int>> entries;
    for (int i = 0; i < q.size(); ++i)
        entries.emplace_back(numeral(i, omega.top), q.eq[i * q.size() + i]);
    return make_velement(std::move(entries));
}

std::vector<long long> VUniverse::counts() const {
    std::vector<long long> out;
    out.reserve(stages.size());
    for (const auto& s : stages) out.push_back(static_cast<long long>(s.size()));
    return out;
}

VUniverse v_build(const FiniteAlgebra& omega, int max_rank, long long cap) {
    if (max_rank < 0) throw StructureError("max_rank must be nonnegative");
    VUniverse u;
    u.stages.push_back({VElement{}});
    for (int r = 0; r < max_rank; ++r) {
        const auto& prev = u.stages.back();
        const std::size_t n = prev.size();

        // One element per (domain subset, assignment); count up front.
        BigInt expected = 1;
        for (std::size_t i = 0; i < n; ++i) {
            expected *= 1 + omega.size();
            if (expected > cap)
                throw CapacityError("universe stage " + std::to_string(r + 1) +
                                    " exceeds cap " + std::to_string(cap) +
                                    " (previous stage has " + std::to_string(n) + " elements)");
        }

        std::vector<VElement> stage;
        stage.reserve(static_cast<std::size_t>(expected));
        for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
            std::vector<std::size_t> domain;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1ull << i)) domain.push_back(i);
            std::vector<int> assign(domain.size(), 0);
            while (true) {
                std::vector<std::pair<VElement, int>> entries;
                entries.reserve(domain.size());
                for (std::size_t i = 0; i < domain.size(); ++i)
                    entries.emplace_back(prev[domain[i]], assign[i]);
                stage.push_back(make_velement(std::move(entries)));
                int pos = static_cast<int>(domain.size()) - 1;
                while (pos >= 0) {
                    if (++assign[pos] < omega.size()) break;
                    assign[pos] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }
        std::sort(stage.begin(), stage.end());
        stage.erase(std::unique(stage.begin(), stage.end()), stage.end());
        u.stages.push_back(std::move(stage));
    }
    return u;
}

std::vector<BigInt> v_count(const FiniteAlgebra& omega, int max_rank) {
    if (max_rank < 0) throw StructureError("max_rank must be nonnegative");
    std::vector<BigInt> counts = {1};
    for (int r = 0; r < max_rank; ++r) {
        const BigInt& prev = counts.back();
        if (prev > 1000000)
            throw CapacityError("universe count exponent exceeds 10^6 at rank " +
                                std::to_string(r + 1));
        BigInt next = 1;
        const BigInt base = 1 + omega.size();
        for (BigInt i = 0; i < prev; ++i) next *= base;
        counts.push_back(next);
    }
    return counts;
}

}  // namespace qlwb
