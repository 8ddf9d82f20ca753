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

// Derivative-free search over one-way resource protocols.
//
// A parameterization fixes N, the ancilla dimension P and which subsystems the
// sender measures. The sender applies exp(iH) on A⊗a and then measures the
// declared subsystems in the computational basis; the receiver applies
// exp(iG_η) on B⊗b for outcome η. Every decoded protocol is deterministic by
// construction. Schmidt coefficients come from P−1 free reals through a
// squared-softmax (last logit pinned to 0), unless fixed.

#include <cstdint>
#include <optional>
#include <vector>

#include "qtnec/parallel.hpp"
#include "qtnec/protocol.hpp"

namespace qtnec {

enum class Measured {
  None,     // no measurement, M = 1
  Ancilla,  // measure a, M = P
  Full,     // measure A⊗a, M = N·P
};

const char* to_string(Measured m);
Measured measured_from_string(const std::string& s);

struct ProtocolParameterization {
  std::size_t n = 2;
  std::size_t p = 1;
  Measured measured = Measured::None;
  std::vector<double> sender;                  // (NP)² reals
  std::vector<std::vector<double>> receivers;  // M × (NP)² reals
  std::vector<double> muParams;                // P−1 reals
  std::optional<RealVector> muFixed;           // overrides muParams when set

  /// Zero generators and logits; all sizes consistent.
  static ProtocolParameterization zeros(std::size_t n, std::size_t p, Measured measured);

  std::size_t m() const;
  std::size_t local_dim() const { return n * p; }

  /// Free coordinates seen by the optimizer: sender, receivers, then μ logits
  /// (omitted when μ is fixed).
  std::vector<double> flatten() const;
  void assign(const std::vector<double>& flat);
  std::size_t free_count() const;
};

/// Schmidt coefficients encoded by the parameterization.
AncillaResource decode_mu(const ProtocolParameterization& params);
ResourceProtocol decode(const ProtocolParameterization& params);

/// Parameters whose decoded protocol is teleportation (P = N, full Bell
/// measurement rotated to the computational basis, uniform μ).
ProtocolParameterization qt_parameterization(std::size_t n);

/// Entanglement fidelity of the decoded protocol on a channel.
double objective(const ProtocolParameterization& params, const KrausChannel& ch);
double objective(const ProtocolParameterization& params, const ComplexMatrix& choiMatrix);

struct OptimizationConfig {
  std::size_t evaluationBudget = 20000;  // objective evaluations per restart
  std::size_t restarts = 1;
  std::uint64_t seed = 0;
  double stepInit = 0.5;
  double stepDecay = 0.999;
  double perturbInit = 0.1;
  double stopDelta = 1e-9;  // a restart ends once the step falls below this
  bool fixMu = false;       // keep μ at the base parameterization's value
  bool warmStart = false;   // restart 0 starts from the base parameters
  double initScale = 1.0;   // std-dev of random starting coordinates
};

void validate(const OptimizationConfig& cfg);

struct OptimizationResult {
  double bestFidelity = 0.0;
  double bestResidual = 0.0;
  ProtocolParameterization bestParams;
  std::optional<ResourceProtocol> bestProtocol;
  std::vector<double> perRestartBests;
  std::vector<std::vector<double>> traces;  // best-so-far per iteration, per restart
  std::size_t evaluationsUsed = 0;
  bool budgetExhausted = false;
  std::uint64_t seed = 0;
};

OptimizationResult optimize(const KrausChannel& ch, const ProtocolParameterization& base,
                            const OptimizationConfig& cfg, Exec exec = Exec::Parallel);

struct SweepRow {
  double theta = 0.0;
  double sumMu = 0.0;
  double bestFidelity = 0.0;
  std::uint64_t seed = 0;
};

/// Qubit sweep: μ fixed at (cos θ, sin θ), full measurement (M = 4), restart 0
/// warm-started from the teleportation operations.
std::vector<SweepRow> sweep_mu(const KrausChannel& ch, const std::vector<double>& thetas, OptimizationConfig cfg,
                               Exec exec = Exec::Parallel);

/// Random deterministic protocol: Haar sender unitary on A⊗a, computational
/// projectors grouped round-robin into M outcomes (empty groups give zero
/// branches when M > N·P), Haar receiver unitaries and a random Schmidt vector.
ResourceProtocol random_protocol(std::size_t n, std::size_t p, std::size_t m, std::uint64_t seed);

}  // namespace qtnec
