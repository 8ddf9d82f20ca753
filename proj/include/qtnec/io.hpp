// Copyright 2026 The qtnec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON file formats. Complex numbers are always two-element arrays [re, im];
// matrices are row-major nested arrays of those.
//
//   channel:  { "dim": N, "kraus": [ matrix, ... ] }
//   state:    { "dim": N, "matrix": matrix }  or  { "dim": N, "amplitudes": [ [re,im], ... ] }
//   protocol: { "N": N, "P": P, "M": M, "mu": [ ... ],
//               "sender": [ { "projector": matrix, "unitary": matrix }, ... ],
//               "receiver": [ matrix, ... ] }

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qtnec/optimize.hpp"
#include "qtnec/theorem.hpp"

namespace qtnec::io {

using nlohmann::json;

/// Malformed or schema-violating input (as opposed to a numeric invariant).
class FormatError : public Error {
 public:
  using Error::Error;
};

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json channel_to_json(const KrausChannel& ch);
/// Validates shapes and Σ K†K = I (InvariantError names the violation).
KrausChannel channel_from_json(const json& j);

json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const json& j);

json protocol_to_json(const ResourceProtocol& p);
/// Checks shapes and the Schmidt vector; determinism is checked separately
/// with require_deterministic() so callers can distinguish the two failures.
ResourceProtocol protocol_from_json(const json& j);

json proof_report_to_json(const ProofReport& r);

json parameterization_to_json(const ProtocolParameterization& p);

json config_to_json(const OptimizationConfig& cfg);
OptimizationConfig config_from_json(const json& j);

json result_to_json(const OptimizationResult& r);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qtnec::io
