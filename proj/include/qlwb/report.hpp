// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QLWB_REPORT_HPP
#define QLWB_REPORT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qlwb {

using json = nlohmann::json;

/// One verified law: name, outcome, how many instances were examined,
/// and on failure the first violating instance.
struct LawCheck {
    std::string law;
    bool pass = true;
    std::int64_t instances = 0;
    json witness;  // null when pass

    json to_json() const {
        json j{{"law", law},
               {"status", pass ? "pass" : "fail"},
               {"instances", instances}};
        if (!pass) j["witness"] = witness;
        return j;
    }
};

struct LawReport {
    std::vector<LawCheck> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    const LawCheck* first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return &c;
        return nullptr;
    }

    void passed(std::string law, std::int64_t instances) {
        checks.push_back({std::move(law), true, instances, json()});
    }

    void failed(std::string law, std::int64_t instances, json witness) {
        checks.push_back({std::move(law), false, instances, std::move(witness)});
    }

    void merge(const LawReport& other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }

    json to_json() const {
        json arr = json::array();
        for (const auto& c : checks) arr.push_back(c.to_json());
        return json{{"ok", ok()}, {"checks", arr}};
    }
};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input data: a table of the wrong shape, an index out of range.
struct StructureError : Error {
    using Error::Error;
};

/// An enumeration or closure would exceed its configured bound.
struct CapacityError : Error {
    using Error::Error;
};

/// A pointwise construction left the fibre (the structured analogue of a
/// quantifier failing to exist); carries the witness point.
struct LiftingError : Error {
    std::string witness;
    LiftingError(const std::string& msg, std::string witness_point)
        : Error(msg), witness(std::move(witness_point)) {}
};

/// Operation applied to an unsupported kind or to mismatched arguments.
struct KindError : Error {
    using Error::Error;
};

/// A requested bound does not exist in the algebra.
struct IncompleteAlgebraError : Error {
    using Error::Error;
};

}  // namespace qlwb

#endif
