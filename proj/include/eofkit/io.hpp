// Copyright 2026 The eofkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// io.hpp - JSON documents for states, ensembles and estimates.
//
// State document:
//   {"dims": [2, 2], "kind": "density" | "pure", "data": [[re, im], ...]}
// with data row-major (the vector itself for "pure"). Doubles are written in
// shortest round-trip form. Readers validate the state invariants.
//
// Ensemble document: [{"weight": w, "state": <pure state document>}, ...]

#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "json.hpp"

#include "eofkit/eof.hpp"

namespace eofkit {

using Json = nlohmann::json;
using AnyState = std::variant<DensityMatrix, PureState>;

Json matrix_to_json(const CMatrix& m);
/// Inverse of matrix_to_json; rows*cols entries required.
CMatrix matrix_from_json(const Json& data, Eigen::Index rows, Eigen::Index cols);

Json state_to_json(const DensityMatrix& rho);
Json state_to_json(const PureState& psi);
/// Throws ArgumentError on malformed documents; state invariants are checked
/// by the DensityMatrix / PureState constructors.
AnyState state_from_json(const Json& doc);
/// Pure documents are converted to their projector.
DensityMatrix density_from_json(const Json& doc);

Json ensemble_to_json(const Ensemble& e);
Ensemble ensemble_from_json(const Json& doc);

Json estimate_to_json(const EofEstimate& est, bool include_ensemble);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& doc);

}  // namespace eofkit
