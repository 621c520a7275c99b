// Copyright 2026 the qlwb authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QLWB_JSON_IO_HPP
#define QLWB_JSON_IO_HPP

#include <filesystem>

#include "qlwb/logic/interpret.hpp"
#include "qlwb/subspace.hpp"
#include "qlwb/tripos.hpp"
#include "qlwb/vset.hpp"

namespace qlwb {

json algebra_to_json(const FiniteAlgebra& a);
FiniteAlgebra algebra_from_json(const json& j);

/// "mo2", "o6", "chain2", "boolean:<k>", or a path to an algebra file.
FiniteAlgebra load_algebra(const std::string& name_or_path);

json object_to_json(const BaseObject& x);
BaseObject object_from_json(const json& j);

json morphism_to_json(const BaseMorphism& f);
BaseMorphism morphism_from_json(const json& j);

SubspaceLatticeSpec subspace_spec_from_json(const json& j);

/// A model bundle: base kind, omega (inline or a file path relative to
/// the bundle), fibre rule, named objects, bounds, and optionally a
/// signature binding sorts to objects and symbols to tables.
struct ModelBundle {
    Model model;
    logic::Signature signature;
    bool has_signature = false;
};

ModelBundle model_bundle_from_json(const json& j, const std::filesystem::path& base_dir);
ModelBundle load_model_file(const std::filesystem::path& path);

json velement_to_json(const FiniteAlgebra& omega, const VElement& v);

json category_to_json(const Model& m, const ToposCategory& cat);

json read_json_file(const std::filesystem::path& path);

}  // namespace qlwb

#endif
