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

#include "qtnec/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qtnec::io {

namespace {

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object()) throw FormatError(std::string(what) + ": expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string(what) + ": missing field '" + key + "'");
  return *it;
}

std::size_t count_field(const json& j, const char* key, const char* what) {
  const json& v = field(j, key, what);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw FormatError(std::string(what) + ": field '" + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw FormatError("complex number must be a two-element array [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw FormatError("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw FormatError("matrix rows must all have the same length");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

json channel_to_json(const KrausChannel& ch) {
  json ops = json::array();
  for (const auto& k : ch.kraus()) ops.push_back(matrix_to_json(k));
  return {{"dim", ch.dim()}, {"kraus", std::move(ops)}};
}

KrausChannel channel_from_json(const json& j) {
  const std::size_t dim = count_field(j, "dim", "channel");
  const json& ops = field(j, "kraus", "channel");
  if (!ops.is_array() || ops.empty()) throw FormatError("channel: 'kraus' must be a non-empty array");
  std::vector<ComplexMatrix> kraus;
  for (const auto& op : ops) {
    ComplexMatrix k = matrix_from_json(op);
    if (static_cast<std::size_t>(k.rows()) != dim || static_cast<std::size_t>(k.cols()) != dim)
      throw DimensionError("channel: Kraus operator is " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                           " but dim is " + std::to_string(dim));
    kraus.push_back(std::move(k));
  }
  if (kraus.size() > dim * dim)
    throw InvariantError("at most N^2 Kraus operators", static_cast<double>(kraus.size()), "channel");
  return KrausChannel(std::move(kraus));
}

json state_to_json(const DensityMatrix& rho) { return {{"dim", rho.dim()}, {"matrix", matrix_to_json(rho.matrix())}}; }

DensityMatrix state_from_json(const json& j) {
  const std::size_t dim = count_field(j, "dim", "state");
  if (j.contains("amplitudes")) {
    const json& amps = j.at("amplitudes");
    if (!amps.is_array() || amps.size() != dim) throw DimensionError("state: 'amplitudes' must have dim entries");
    ComplexVector v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(amps[i]);
    return DensityMatrix::from_pure(PureState(v, 1e-9));
  }
  ComplexMatrix m = matrix_from_json(field(j, "matrix", "state"));
  if (static_cast<std::size_t>(m.rows()) != dim || static_cast<std::size_t>(m.cols()) != dim)
    throw DimensionError("state: matrix shape does not match dim");
  return DensityMatrix(std::move(m), 1e-9);
}

json protocol_to_json(const ResourceProtocol& p) {
  json sender = json::array();
  for (const auto& s : p.sender())
    sender.push_back({{"projector", matrix_to_json(s.projector)}, {"unitary", matrix_to_json(s.unitary)}});
  json receiver = json::array();
  for (const auto& r : p.receiver()) receiver.push_back(matrix_to_json(r));
  std::vector<double> mu(p.resource().mu().data(), p.resource().mu().data() + p.resource().mu().size());
  return {{"N", p.n()}, {"P", p.p()},       {"M", p.m()}, {"mu", mu}, {"sender", std::move(sender)},
          {"receiver", std::move(receiver)}};
}

ResourceProtocol protocol_from_json(const json& j) {
  const std::size_t n = count_field(j, "N", "protocol");
  const std::size_t p = count_field(j, "P", "protocol");
  const std::size_t m = count_field(j, "M", "protocol");
  const json& muJson = field(j, "mu", "protocol");
  if (!muJson.is_array() || muJson.size() != p) throw DimensionError("protocol: 'mu' must have P entries");
  RealVector mu(static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < p; ++i) {
    if (!muJson[i].is_number()) throw FormatError("protocol: 'mu' entries must be numbers");
    mu(static_cast<Eigen::Index>(i)) = muJson[i].get<double>();
  }
  const json& senderJson = field(j, "sender", "protocol");
  const json& receiverJson = field(j, "receiver", "protocol");
  if (!senderJson.is_array() || senderJson.size() != m)
    throw DimensionError("protocol: 'sender' must have M entries");
  if (!receiverJson.is_array() || receiverJson.size() != m)
    throw DimensionError("protocol: 'receiver' must have M entries");
  std::vector<SenderBranch> sender;
  for (const auto& s : senderJson)
    sender.push_back({matrix_from_json(field(s, "projector", "protocol sender branch")),
                      matrix_from_json(field(s, "unitary", "protocol sender branch"))});
  std::vector<ComplexMatrix> receiver;
  for (const auto& r : receiverJson) receiver.push_back(matrix_from_json(r));
  return ResourceProtocol(n, AncillaResource(mu), std::move(sender), std::move(receiver));
}

json proof_report_to_json(const ProofReport& r) {
  json beta = json::array();
  for (const auto& b : r.branchScalars) beta.push_back(complex_to_json(b));
  json out = {{"N", r.n},
              {"P", r.p},
              {"M", r.m},
              {"relation13MaxResidual", r.relation13MaxResidual},
              {"contradictionLHS", nullptr},
              {"contradictionRHS", nullptr},
              {"entanglementSum", r.entanglementSum},
              {"bound", r.bound},
              {"branchScalars", std::move(beta)},
              {"cauchySchwarzViolation", r.cauchySchwarzViolation},
              {"verdicts", r.verdicts}};
  if (r.contradictionLHS) out["contradictionLHS"] = *r.contradictionLHS;
  if (r.contradictionRHS) out["contradictionRHS"] = *r.contradictionRHS;
  return out;
}

json parameterization_to_json(const ProtocolParameterization& p) {
  json out = {{"N", p.n},
              {"P", p.p},
              {"measured", to_string(p.measured)},
              {"sender", p.sender},
              {"receivers", p.receivers},
              {"muParams", p.muParams},
              {"muFixed", nullptr}};
  if (p.muFixed) out["muFixed"] = std::vector<double>(p.muFixed->data(), p.muFixed->data() + p.muFixed->size());
  return out;
}

json config_to_json(const OptimizationConfig& cfg) {
  return {{"evaluationBudget", cfg.evaluationBudget},
          {"restarts", cfg.restarts},
          {"seed", cfg.seed},
          {"stepInit", cfg.stepInit},
          {"stepDecay", cfg.stepDecay},
          {"perturbInit", cfg.perturbInit},
          {"stopDelta", cfg.stopDelta},
          {"fixMu", cfg.fixMu},
          {"warmStart", cfg.warmStart},
          {"initScale", cfg.initScale}};
}

OptimizationConfig config_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("config: expected a JSON object");
  OptimizationConfig cfg;
  try {
    cfg.evaluationBudget = j.value("evaluationBudget", cfg.evaluationBudget);
    cfg.restarts = j.value("restarts", cfg.restarts);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.stepInit = j.value("stepInit", cfg.stepInit);
    cfg.stepDecay = j.value("stepDecay", cfg.stepDecay);
    cfg.perturbInit = j.value("perturbInit", cfg.perturbInit);
    cfg.stopDelta = j.value("stopDelta", cfg.stopDelta);
    cfg.fixMu = j.value("fixMu", cfg.fixMu);
    cfg.initScale = j.value("initScale", cfg.initScale);
    if (j.contains("warmStart")) {
      const json& w = j.at("warmStart");
      cfg.warmStart = w.is_boolean() ? w.get<bool>() : (w.is_string() && w.get<std::string>() != "none");
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

json result_to_json(const OptimizationResult& r) {
  json out = {{"bestFidelity", r.bestFidelity},
              {"bestResidual", r.bestResidual},
              {"perRestartBests", r.perRestartBests},
              {"evaluationsUsed", r.evaluationsUsed},
              {"budgetExhausted", r.budgetExhausted},
              {"seed", r.seed},
              {"bestParameters", parameterization_to_json(r.bestParams)},
              {"bestProtocol", nullptr}};
  if (r.bestProtocol) out["bestProtocol"] = protocol_to_json(*r.bestProtocol);
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace qtnec::io
