// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "spectwist/models.hpp"

namespace spectwist::io {

using nlohmann::json;

// Malformed or schema-violating input.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(cplx z);
json to_json(const CMatrix& m);
json to_json(const AlgebraElement& a);
json to_json(const Perturbation& p);
json triple_to_json(const TwistedTriple& t);

cplx complex_from_json(const json& j, const std::string& where);
CMatrix matrix_from_json(const json& j, const std::string& where);
AlgebraElement element_from_json(const json& j, const AlgebraShape& shape, const std::string& where);
Perturbation pert_from_json(const json& j, const AlgebraShape& shape);
TwistedTriple triple_from_json(const json& j);

json read_json_file(const std::string& path);
TwistedTriple load_triple(const std::string& path);
Perturbation load_pert(const std::string& path, const AlgebraShape& shape);
AlgebraElement load_element(const std::string& path, const AlgebraShape& shape);
IdempotentData load_idempotent(const std::string& path, const TwistedTriple& t);

}  // namespace spectwist::io
